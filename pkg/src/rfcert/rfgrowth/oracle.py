"""Brute-force depth: scan a catalog for the smallest target in which a word survives."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Iterator, Sequence

from ..finite_groups import FiniteGroup
from ..words import Letter, Word, default_names, format_word, free_reduce
from .catalog import ClassFilter, QuotientCatalog, default_catalog

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


class NotSeparated(RuntimeError):
    """No catalog member separates the word (the catalog is too small)."""


class Hom:
    """Homomorphism F_k -> Q given by generator images."""

    def __init__(self, target: FiniteGroup, images: Sequence[Any]):
        self.target = target
        self.images = tuple(images)

    @property
    def rank(self) -> int:
        return len(self.images)

    def __call__(self, w: Sequence[Letter]):
        return self.target.evaluate(w, self.images)

    def kills(self, w: Sequence[Letter]) -> bool:
        return self(w) == self.target.identity

    def image(self, cap: int | None = None) -> FiniteGroup:
        return self.target.subgroup(self.images)

    def is_surjective(self) -> bool:
        return self.target.generates(list(self.images))

    def compose(self, substitution: Sequence[Sequence[Letter]]) -> Hom:
        """``self o alpha`` where alpha sends generator i to ``substitution[i]``."""
        return Hom(self.target, [self(w) for w in substitution])

    def __repr__(self) -> str:
        return f"Hom({self.target.name or self.target.order}, {self.images!r})"


class _Evaluator:
    """Word evaluation on element indices through the Cayley table when affordable."""

    def __init__(self, Q: FiniteGroup):
        self.Q = Q
        self.table = Q.table() if Q.order <= Q.TABLE_LIMIT else None
        self.one = Q.index[Q.identity]
        if self.table is not None:
            self.inv_idx = [Q.index[Q.inv(x)] for x in Q.elements]

    def survives(self, w: Sequence[Letter], images: Sequence[Any]) -> bool:
        Q = self.Q
        if self.table is None:
            return Q.evaluate(w, images) != Q.identity
        t = self.table
        idx = [Q.index[x] for x in images]
        inv = [self.inv_idx[i] for i in idx]
        cur = self.one
        for g, s in w:
            cur = t[cur][idx[g] if s == 1 else inv[g]]
        return cur != self.one


def enumerate_homs(k: int, Q: FiniteGroup, budget: int = DEFAULT_BUDGET) -> Iterator[Hom]:
    """All k-tuples of elements of Q in lexicographic element order."""
    if k < 0:
        raise ValueError("rank must be nonnegative")
    if Q.order**k > budget:
        raise BudgetExceeded(f"{Q.order}^{k} homomorphisms exceed the budget {budget}")
    for images in product(Q.elements, repeat=k):
        yield Hom(Q, images)


def _candidate_tuples(k: int, Q: FiniteGroup) -> Iterator[tuple]:
    # the first image can be taken up to conjugacy; survival, surjectivity
    # and the kernel are all unchanged by an inner automorphism
    if k == 0:
        yield ()
        return
    for first in Q.conjugacy_class_reps():
        for rest in product(Q.elements, repeat=k - 1):
            yield (first,) + rest


def _candidate_count(k: int, Q: FiniteGroup, nclasses: int) -> int:
    return 1 if k == 0 else nclasses * Q.order ** (k - 1)


@dataclass
class DepthReport:
    word: Word
    rank: int
    target: str
    order: int
    class_filter: str
    images: tuple
    invariant: bool | None
    exhaustive: bool
    skipped: list[str]

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.rank)
        lines = [
            f"word: {format_word(self.word, names)}",
            f"target: {self.target}",
            f"order: {self.order}",
            f"class: {self.class_filter}",
            f"images: {'; '.join(str(x) for x in self.images)}",
            f"invariance: {'n/a' if self.invariant is None else str(self.invariant).lower()}",
            f"exhaustive: {str(self.exhaustive).lower()}",
        ]
        if self.skipped:
            lines.append(f"skipped: {', '.join(self.skipped)}")
        return "\n".join(lines)


def depth(
    k: int,
    g: Sequence[Letter],
    catalog: QuotientCatalog | None = None,
    class_filter: ClassFilter | None = None,
    budget: int = DEFAULT_BUDGET,
    aut_rules: Sequence | None = None,
    require_invariant: bool = False,
) -> DepthReport:
    """Smallest catalog target admitting phi with phi(g) != 1.

    Restricted classes also demand phi surjective. With ``aut_rules`` the
    kernel invariance of the chosen phi is reported; ``require_invariant``
    skips candidates whose kernel is not invariant.
    """
    from .invariance import kernel_invariant

    w = free_reduce(g)
    if not w:
        raise ValueError("the word is trivial in the free group")
    if any(letter[0] >= k for letter in w):
        raise ValueError(f"word uses a generator outside rank {k}")
    catalog = catalog if catalog is not None else default_catalog()
    cls = class_filter or ClassFilter()
    if require_invariant and not aut_rules:
        raise ValueError("require_invariant needs aut_rules")
    skipped: list[str] = []
    for entry in catalog.filtered(cls):
        if entry.order ** max(k - 1, 0) > budget:  # cheap lower bound before building Q
            skipped.append(entry.name)
            continue
        Q = entry.group
        if _candidate_count(k, Q, len(Q.conjugacy_class_reps())) > budget:
            skipped.append(entry.name)
            continue
        ev = _Evaluator(Q)
        for images in _candidate_tuples(k, Q):
            if not ev.survives(w, images):
                continue
            if cls.restricted and not Q.generates(list(images)):
                continue
            phi = Hom(Q, images)
            inv = None
            if aut_rules:
                inv = kernel_invariant(phi, aut_rules)
                if require_invariant and not inv:
                    continue
            exhaustive = not skipped and entry.order - 1 <= catalog.complete_up_to(cls)
            return DepthReport(w, k, entry.name, entry.order, str(cls), images, inv, exhaustive, skipped)
    raise NotSeparated(
        f"no catalog target in class {cls} separates the word"
        + (f" (skipped over budget: {', '.join(skipped)})" if skipped else "")
    )
