"""Commutator witnesses: conjugator search, derived-series words and common multiples.

Every routine works through a *handle*, an object with ``value(word)``,
``mul``, ``inv`` and ``is_one``. Values are whatever makes identity testing
cheap: reduced words in a free group, (matrix, inverse) pairs for a matrix
group, plain elements for a finite group. Words are freely reduced as they
are built, which never changes the group element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, log2
from typing import Any, Sequence

from .finite_groups import CapacityError, FiniteGroup
from .words import (
    EMPTY,
    FreeGroup,
    Letter,
    Word,
    alphabet,
    format_word,
    free_reduce,
    inverse,
)

DEFAULT_CZ = 5


class MalabelianViolation(RuntimeError):
    """No conjugator within the search radius breaks commutation."""


def solvable_depth(ell: int, c_z: float = DEFAULT_CZ) -> int:
    """``ceil(c_z * log2(ell)) + 3``: an over-estimate of solvable derived length in GL_ell."""
    if ell < 1:
        raise ValueError("dimension must be at least 1")
    return ceil(c_z * log2(ell)) + 3


class FreeHandle:
    def __init__(self, group: FreeGroup):
        self.group = group
        self.rank = group.rank

    def value(self, w: Sequence[Letter]) -> Word:
        return free_reduce(w)

    def mul(self, a: Word, b: Word) -> Word:
        return free_reduce(a + b)

    def inv(self, a: Word) -> Word:
        return inverse(a)

    def is_one(self, a: Word) -> bool:
        return not a

    def format(self, w: Sequence[Letter]) -> str:
        return self.group.format(w)


class FiniteHandle:
    """Images of words under the homomorphism generator i -> images[i]."""

    def __init__(self, group: FiniteGroup, images: Sequence[Any]):
        self.group = group
        self.images = list(images)
        self.rank = len(self.images)

    def value(self, w: Sequence[Letter]):
        return self.group.evaluate(w, self.images)

    def mul(self, a, b):
        return self.group.mul(a, b)

    def inv(self, a):
        return self.group.inv(a)

    def is_one(self, a) -> bool:
        return a == self.group.identity

    def format(self, w: Sequence[Letter]) -> str:
        from .words import default_names

        return format_word(w, default_names(self.rank))


class MalabelianContext:
    def __init__(self, handle, kappa: int = 1, kappa_max: int = 4, max_length: int = 10**7):
        if kappa < 0 or kappa_max < 0:
            raise ValueError("kappa and kappa_max must be nonnegative")
        if kappa > kappa_max:
            raise ValueError("kappa must not exceed kappa_max")
        self.handle = handle
        self.kappa = kappa
        self.kappa_max = kappa_max
        self.max_length = max_length

    @classmethod
    def free(cls, rank: int = 2, kappa: int = 1, kappa_max: int = 4, names=None) -> MalabelianContext:
        return cls(FreeHandle(FreeGroup(rank, names)), kappa, kappa_max)

    @classmethod
    def matrix(cls, spec, kappa: int = 1, kappa_max: int = 6, max_length: int = 10**7) -> MalabelianContext:
        from .matgroup import MatrixHandle

        return cls(MatrixHandle(spec), kappa, kappa_max, max_length)

    @property
    def rank(self) -> int:
        return self.handle.rank

    def value(self, w):
        return self.handle.value(w)

    def is_identity(self, w) -> bool:
        return self.handle.is_one(self.handle.value(w))

    def format(self, w) -> str:
        return self.handle.format(w)


def _comm_value(h, a, b):
    return h.mul(h.mul(h.inv(a), h.inv(b)), h.mul(a, b))


def _conj_value(h, k, x):
    return h.mul(h.mul(k, x), h.inv(k))


def _conjugator_candidates(ctx: MalabelianContext):
    """(word, value) for reduced words of length <= kappa_max in shortlex order."""
    h = ctx.handle
    letters = alphabet(ctx.rank)
    letter_vals = {a: h.value((a,)) for a in letters}
    one = h.value(EMPTY)
    yield EMPTY, one
    level: list[tuple[Word, Any]] = [(EMPTY, one)]
    for _ in range(ctx.kappa_max):
        nxt = []
        for w, v in level:
            for a in letters:
                if w and w[-1][0] == a[0] and w[-1][1] == -a[1]:
                    continue
                item = (w + (a,), h.mul(v, letter_vals[a]))
                nxt.append(item)
                yield item
        level = nxt


def find_conjugator_value(ctx: MalabelianContext, gv, hv) -> tuple[Word, Any]:
    """Like :func:`find_conjugator` on precomputed values; returns (k, value of k h k^-1)."""
    h = ctx.handle
    if h.is_one(gv) or h.is_one(hv):
        raise ValueError("conjugator search needs nontrivial g and h")
    for k, kv in _conjugator_candidates(ctx):
        conj = _conj_value(h, kv, hv)
        if not h.is_one(_comm_value(h, gv, conj)):
            return k, conj
    raise MalabelianViolation(
        f"no conjugator of length <= {ctx.kappa_max} makes the pair non-commuting"
    )


def find_conjugator(ctx: MalabelianContext, g: Sequence[Letter], h: Sequence[Letter]) -> Word:
    """Shortlex-least k with ``[g, k h k^-1] != 1``."""
    return find_conjugator_value(ctx, ctx.value(g), ctx.value(h))[0]


@dataclass
class WitnessRecord:
    a: Word
    level: int
    word: Word
    conjugators: list[Word]
    kappa: int
    value: Any = field(default=None, repr=False, compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def effective_kappa(self) -> int:
        return max([self.kappa] + [len(k) for k in self.conjugators])

    @property
    def bound(self) -> int:
        return 8**self.level * max(len(self.a), self.effective_kappa)

    def within_bound(self) -> bool:
        return self.length <= self.bound


def build_witness_word(a: Sequence[Letter], conjugators: Sequence[Sequence[Letter]]) -> Word:
    """Rebuild ``w_{n,a}`` from its recorded conjugators (no searching)."""
    w = free_reduce(a)
    for k in conjugators:
        k = tuple(k)
        w = free_reduce(inverse(w) + k + inverse(w) + inverse(k) + w + k + w + inverse(k))
    return w


def derived_witness(
    ctx: MalabelianContext, a: Sequence[Letter], n: int, degree_guard=None
) -> WitnessRecord:
    """``w_1 = [a, k a k^-1]``, ``w_j = [w_{j-1}, k_j w_{j-1} k_j^-1]``.

    ``degree_guard`` (optional) is called with each new word length before any
    arithmetic and may raise :class:`CapacityError`.
    """
    if n < 0:
        raise ValueError("level must be nonnegative")
    h = ctx.handle
    w = free_reduce(a)
    v = h.value(w)
    if h.is_one(v):
        raise ValueError("the input word is trivial in the group")
    conjugators: list[Word] = []
    for _ in range(n):
        k, conj = find_conjugator_value(ctx, v, v)
        new_len = 4 * len(w) + 4 * len(k)
        if new_len > ctx.max_length:
            raise CapacityError(f"witness length {new_len} exceeds {ctx.max_length}")
        if degree_guard is not None:
            degree_guard(new_len)
        v = _comm_value(h, v, conj)
        w = free_reduce(inverse(w) + k + inverse(w) + inverse(k) + w + k + w + inverse(k))
        conjugators.append(k)
        if h.is_one(v):
            raise AssertionError("commutator witness collapsed to the identity")
    return WitnessRecord(tuple(free_reduce(a)), n, w, conjugators, ctx.kappa, v)


@dataclass
class LcmNode:
    word: Word
    left: int | None = None
    right: int | None = None
    conjugator: Word = EMPTY


@dataclass
class LcmRecord:
    inputs: list[Word]
    word: Word
    nodes: list[LcmNode]
    levels: list[list[int]]
    kappa: int
    value: Any = field(default=None, repr=False, compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def effective_kappa(self) -> int:
        return max([self.kappa] + [len(n.conjugator) for n in self.nodes])

    @property
    def bound(self) -> int:
        t = len(self.inputs)
        return 4 * t * t * (max(len(w) for w in self.inputs) + 3 * self.effective_kappa)

    def within_bound(self) -> bool:
        return self.length <= self.bound


def lcm_witness(ctx: MalabelianContext, T: Sequence[Sequence[Letter]]) -> LcmRecord:
    """A nontrivial element of the intersection of the normal closures of T.

    T is padded cyclically to a power of two; neighbours are paired and
    replaced by ``[x, y z y^-1]`` where y is the least conjugator making the
    pair non-commuting. The tree is kept for audit.
    """
    if not T:
        raise ValueError("T must be nonempty")
    h = ctx.handle
    inputs = [free_reduce(t) for t in T]
    nodes: list[LcmNode] = []
    values = []
    for t in inputs:
        v = h.value(t)
        if h.is_one(v):
            raise ValueError("every element of T must be nontrivial")
        nodes.append(LcmNode(t))
        values.append(v)
    size = 1
    while size < len(inputs):
        size *= 2
    current = [i % len(inputs) for i in range(size)]
    levels = [list(current)]
    while len(current) > 1:
        nxt = []
        for i in range(0, len(current), 2):
            li, ri = current[i], current[i + 1]
            k, conj = find_conjugator_value(ctx, values[li], values[ri])
            x, z = nodes[li].word, nodes[ri].word
            yz = k + z + inverse(k)
            word_ = free_reduce(inverse(x) + inverse(yz) + x + yz)
            values.append(_comm_value(h, values[li], conj))
            nodes.append(LcmNode(word_, li, ri, k))
            nxt.append(len(nodes) - 1)
        current = nxt
        levels.append(list(current))
    root = current[0]
    return LcmRecord(inputs, nodes[root].word, nodes, levels, ctx.kappa, values[root])
