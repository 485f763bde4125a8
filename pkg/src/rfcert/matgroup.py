"""Finitely generated matrix groups over R[1/S][T1..Ts].

Generators are declared in pairs (matrix, supplied inverse). Words are over
the declared generators only: letter ``(i, +1)`` is generator i and
``(i, -1)`` its supplied inverse.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .ring import Localization, LocalizedElem, MultiPoly
from .words import Letter, Word, format_word, inverse, parse_word, random_reduced_word

Matrix = tuple[tuple[LocalizedElem, ...], ...]


class SpecError(ValueError):
    """A group specification is malformed or fails validation."""


class InvariantViolation(RuntimeError):
    """A quantity the theory guarantees failed to materialise (indicates a bug or bad input)."""


def mat_identity(ring: Localization, n: int) -> Matrix:
    one, zero = ring.one(), ring.zero()
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        new_row = []
        for col in cols:
            acc = None
            for x, y in zip(row, col):
                if x.is_zero() or y.is_zero():
                    continue
                t = x * y
                acc = t if acc is None else acc + t
            new_row.append(acc if acc is not None else row[0].ring.zero())
        out.append(tuple(new_row))
    return tuple(out)


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_is_identity(a: Matrix) -> bool:
    n = len(a)
    return all(
        (a[i][j] == 1) if i == j else a[i][j].is_zero() for i in range(n) for j in range(n)
    )


def mat_str(a: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in a) + "]"


@dataclass(frozen=True)
class GeneratorConstants:
    K: int
    C: int | None
    phi: MultiPoly
    phi_exponents: tuple[int, ...]


@dataclass(frozen=True)
class BoundReport:
    holds: bool
    value: int
    bound: int

    # the two checks report under their own names
    @property
    def max_deg(self) -> int:
        return self.value

    @property
    def max_abs(self) -> int:
        return self.value


class GroupSpec:
    """Named generator matrices with verified inverses."""

    def __init__(
        self,
        ring: Localization,
        dim: int,
        generators: Sequence[tuple[str, Matrix, str, Matrix]],
        *,
        source: str = "",
    ):
        if dim < 1:
            raise SpecError("dimension must be at least 1")
        self.ring = ring
        self.dim = dim
        self.source = source
        self.names: list[str] = []
        self.inverse_names: list[str] = []
        self.matrices: list[Matrix] = []
        self.inverses: list[Matrix] = []
        seen: set[str] = set()
        ident = mat_identity(ring, dim)
        for name, m, inv_name, m_inv in generators:
            for label in (name, inv_name):
                if label in seen:
                    raise SpecError(f"duplicate generator name {label!r}")
                seen.add(label)
            for label, mat in ((name, m), (inv_name, m_inv)):
                if len(mat) != dim or any(len(r) != dim for r in mat):
                    raise SpecError(f"generator {label} is not {dim}x{dim}")
                for row in mat:
                    for x in row:
                        if x.ring != ring:
                            raise SpecError(f"generator {label} has entries in another ring")
            if not (mat_eq(mat_mul(m, m_inv), ident) and mat_eq(mat_mul(m_inv, m), ident)):
                raise SpecError(f"{inv_name} is not the inverse of {name}")
            self.names.append(name)
            self.inverse_names.append(inv_name)
            self.matrices.append(m)
            self.inverses.append(m_inv)
        self._identity = ident
        self._constants: GeneratorConstants | None = None

    def __repr__(self) -> str:
        return f"GroupSpec(dim={self.dim}, gens={self.names}, ring={self.ring!r})"

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def char(self) -> int:
        return self.ring.char

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def all_generator_names(self) -> list[str]:
        return self.names + self.inverse_names

    def letter_names(self) -> dict[str, Letter]:
        table = {n: (i, 1) for i, n in enumerate(self.names)}
        table.update({n: (i, -1) for i, n in enumerate(self.inverse_names)})
        return table

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self.letter_names())

    def format_word(self, w: Sequence[Letter]) -> str:
        return format_word(w, self.names)

    def identity(self) -> Matrix:
        return self._identity

    def letter_matrix(self, letter: Letter) -> Matrix:
        g, s = letter
        if not 0 <= g < self.rank:
            raise IndexError(f"generator index {g} out of range")
        return self.matrices[g] if s == 1 else self.inverses[g]

    def all_matrices(self) -> list[Matrix]:
        return self.matrices + self.inverses

    def random_word(self, n: int, rng: random.Random) -> Word:
        return random_reduced_word(self.rank, n, rng)


def evaluate_word(spec: GroupSpec, w: Sequence[Letter]) -> Matrix:
    out = spec.identity()
    for letter in w:
        out = mat_mul(out, spec.letter_matrix(letter))
    return out


def evaluate_pair(spec: GroupSpec, w: Sequence[Letter]) -> tuple[Matrix, Matrix]:
    """The matrix of w together with the matrix of its formal inverse."""
    return evaluate_word(spec, w), evaluate_word(spec, inverse(w))


def is_identity_word(spec: GroupSpec, w: Sequence[Letter]) -> bool:
    return mat_is_identity(evaluate_word(spec, w))


def phi_exponents(spec: GroupSpec) -> tuple[int, ...]:
    total = [0] * len(spec.ring.S)
    for m in spec.all_matrices():
        for row in m:
            for x in row:
                for i, k in enumerate(x.den):
                    total[i] += k
    return tuple(total)


def phi_product(spec: GroupSpec) -> MultiPoly:
    """Product of every denominator of every generator entry, inverses included."""
    return spec.ring.expand(phi_exponents(spec))


def clear_entry(spec: GroupSpec, x: LocalizedElem, power: int, phi_exp: Sequence[int] | None = None) -> MultiPoly:
    """``Phi**power * x`` as a polynomial; raises if the denominator does not cancel."""
    phi_exp = phi_exponents(spec) if phi_exp is None else phi_exp
    target = [power * e for e in phi_exp]
    try:
        return x.cleared(target)
    except ValueError:
        raise InvariantViolation(
            f"denominator of {x} does not divide Phi^{power}"
        ) from None


def generator_constants(spec: GroupSpec) -> GeneratorConstants:
    if spec._constants is None:
        exps = phi_exponents(spec)
        phi = spec.ring.expand(exps)
        K = 0
        C = 0 if spec.char == 0 else None
        for m in spec.all_matrices():
            for row in m:
                for x in row:
                    cleared = clear_entry(spec, x, 1, exps)
                    K = max(K, cleared.degree())
                    if C is not None:
                        C = max(C, cleared.max_abs_coeff())
        spec._constants = GeneratorConstants(K, C, phi, exps)
    return spec._constants


def _cleared_entries(spec: GroupSpec, w: Sequence[Letter]) -> list[MultiPoly]:
    if len(w) < 1:
        raise ValueError("bound checks need a word of length at least 1")
    consts = generator_constants(spec)
    mat = evaluate_word(spec, w)
    return [clear_entry(spec, x, len(w), consts.phi_exponents) for row in mat for x in row]


def check_degree_bound(spec: GroupSpec, w: Sequence[Letter]) -> BoundReport:
    consts = generator_constants(spec)
    max_deg = max(p.degree() for p in _cleared_entries(spec, w))
    bound = consts.K * len(w)
    return BoundReport(max_deg <= bound, max_deg, bound)


def coefficient_bound(K: int, C: int, dim: int, n: int) -> int:
    return (2 * max(K, 1) * C * dim) ** n * factorial(n)


def check_coeff_bound(spec: GroupSpec, w: Sequence[Letter]) -> BoundReport:
    if spec.char:
        raise ValueError("coefficient magnitudes are only defined in characteristic 0")
    consts = generator_constants(spec)
    max_abs = max(p.max_abs_coeff() for p in _cleared_entries(spec, w))
    bound = coefficient_bound(consts.K, consts.C or 0, spec.dim, len(w))
    return BoundReport(max_abs <= bound, max_abs, bound)


class MatrixHandle:
    """Group operations on (matrix, inverse matrix) pairs for a spec."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.rank = spec.rank

    def value(self, w: Sequence[Letter]) -> tuple[Matrix, Matrix]:
        return evaluate_pair(self.spec, w)

    def mul(self, a, b):
        return (mat_mul(a[0], b[0]), mat_mul(b[1], a[1]))

    def inv(self, a):
        return (a[1], a[0])

    def is_one(self, a) -> bool:
        return mat_is_identity(a[0])

    def format(self, w: Sequence[Letter]) -> str:
        return self.spec.format_word(w)
