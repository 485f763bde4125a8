"""From polynomials to finite fields: variable reduction, prime and modulus choice,
and the induced maps of a matrix group into GL over a finite field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import log
from typing import Sequence

from .matgroup import GroupSpec, Matrix
from .ring import FiniteField, LocalizedElem, MultiPoly, UniPoly, is_prime, iter_irreducibles, primes
from .ring.polys import all_exponent_vectors
from .words import Letter, inverse


class DenominatorCollapse(ValueError):
    """A member of the denominator set specialises to zero."""


@dataclass
class ReductionResult:
    n_vec: tuple[int, ...]
    g: UniPoly
    D: int
    audit: list[str] = field(default_factory=list)
    fallback: bool = False

    @property
    def box(self) -> int:
        return self.D ** (2 * len(self.n_vec))


def _reduce(f: MultiPoly, D: int, audit: list[str]) -> tuple[int, ...]:
    s = f.nvars
    if s == 0:
        return ()
    if f.is_constant():
        audit.append(f"s={s}: constant, all exponents 0")
        return (0,) * s
    if s == 1:
        audit.append("s=1: n=1")
        return (1,)
    k, h0, h1 = f.split_first_variable()
    n1 = 0 if h1.is_zero() else D ** (2 * s)
    audit.append(f"s={s}: k={k}, h1 {'zero' if h1.is_zero() else 'nonzero'}, n1={n1}")
    return (n1,) + _reduce(h0, D, audit)


def reduce_to_one_variable(f: MultiPoly) -> ReductionResult:
    """Exponents n with ``f(tau^n1, ..., tau^ns) != 0``, all at most ``max(deg f, 2)^(2s)``."""
    if f.is_zero():
        raise ValueError("cannot reduce the zero polynomial")
    D = max(f.degree(), 2)
    audit: list[str] = []
    n_vec = _reduce(f, D, audit)
    g = f.substitute_powers(n_vec)
    if not g.is_zero():
        return ReductionResult(n_vec, g, D, audit)
    audit.append("recursive candidate vanished; exhaustive search")
    for cand in all_exponent_vectors(f.nvars, D ** (2 * f.nvars)):
        g = f.substitute_powers(cand)
        if not g.is_zero():
            return ReductionResult(tuple(cand), g, D, audit, fallback=True)
    raise AssertionError("no exponent vector keeps f nonzero; polynomial arithmetic is broken")


@dataclass
class PrimeChoice:
    m: int
    p: int
    value: int
    diagnostics: dict = field(default_factory=dict)


def _smallest_prime_not_dividing(n: int) -> int:
    for p in primes():
        if n % p:
            return p
    raise AssertionError("unreachable")


def choose_prime(
    h: UniPoly,
    also_nonzero: Sequence[UniPoly] = (),
    s: int | None = None,
    d: int | None = None,
) -> PrimeChoice:
    """Smallest evaluation point m and then smallest prime p with ``h(m) != 0 mod p``.

    ``also_nonzero`` lists further polynomials that must survive at (m, p).
    """
    if h.char:
        raise ValueError("choose_prime expects an integer polynomial")
    if h.is_zero():
        raise ValueError("h must be nonzero")
    r = h.degree()

    def admissible(m: int) -> int | None:
        prod = h(m)
        if prod == 0:
            return None
        for q in also_nonzero:
            v = q(m)
            if v == 0:
                return None
            prod *= v
        return prod

    m, prod = 0, None
    if h.coeffs[0] != 0:
        prod = admissible(0)
    if prod is None:
        m = 1
        while True:
            prod = admissible(m)
            if prod is not None:
                break
            m += 1
    p = _smallest_prime_not_dividing(prod)
    diag = {
        "log_max_coeff": round(log(max(h.max_abs_coeff(), 1)), 6),
        "deg_h": r,
        "point_bound": r + 1,
    }
    if s is not None and d is not None:
        diag["proof_scale"] = (2 * s + 2) * d ** (2 * s + 2)
    return PrimeChoice(m, p, h(m), diag)


@dataclass
class IrreducibleChoice:
    w: UniPoly
    p: int

    @property
    def field_size(self) -> int:
        return self.p ** self.w.degree()


def choose_irreducible(h: UniPoly, also_nonzero: Sequence[UniPoly] = ()) -> IrreducibleChoice:
    """Smallest monic irreducible (degree, then lex) dividing neither h nor any of also_nonzero."""
    p = h.char
    if not p:
        raise ValueError("choose_irreducible expects a polynomial over F_p")
    if h.is_zero():
        raise ValueError("h must be nonzero")
    for q in also_nonzero:
        if q.is_zero():
            raise DenominatorCollapse("a denominator specialises to zero in F_p[tau]")
    for w in iter_irreducibles(p):
        if not w.divides(h) and not any(w.divides(q) for q in also_nonzero):
            return IrreducibleChoice(w, p)
    raise AssertionError("unreachable")


class Specialization:
    """Entrywise map of a spec into matrices over a finite field.

    Characteristic 0: ``T_i -> m^(n_i) mod p``. Characteristic p:
    ``T_i -> tau^(n_i)`` in ``F_p[tau]/(w)``.
    """

    def __init__(self, spec: GroupSpec, field_: FiniteField, point: Sequence[int], description: dict):
        self.spec = spec
        self.field = field_
        self.point = tuple(point)
        self.description = description
        F = field_
        self._den_images = []
        for s in spec.ring.S:
            v = self.eval_poly(s)
            if v == 0:
                raise DenominatorCollapse(f"denominator {s} specialises to 0 in {F!r}")
            self._den_images.append(v)
        self.generators = [self.map_matrix(m) for m in spec.matrices]
        self.inverses = [self.map_matrix(m) for m in spec.inverses]
        self.identity = F.identity(spec.dim)

    @property
    def field_size(self) -> int:
        return self.field.order

    def eval_poly(self, f: MultiPoly) -> int:
        F = self.field
        acc = 0
        for exp, c in f.terms.items():
            term = F.from_int(c)
            for t, k in zip(self.point, exp):
                if k:
                    term = F.mul(term, F.pow(t, k))
            acc = F.add(acc, term)
        return acc

    def map_elem(self, x: LocalizedElem) -> int:
        F = self.field
        v = self.eval_poly(x.num)
        for img, k in zip(self._den_images, x.den):
            if k:
                v = F.mul(v, F.pow(F.inv(img), k))
        return v

    def map_matrix(self, m: Matrix):
        return tuple(tuple(self.map_elem(x) for x in row) for row in m)

    def letter_image(self, letter: Letter):
        g, s = letter
        return self.generators[g] if s == 1 else self.inverses[g]

    def image_word(self, w: Sequence[Letter]):
        F = self.field
        out = self.identity
        for letter in w:
            out = F.matmul(out, self.letter_image(letter))
        return out

    def image_pair(self, w: Sequence[Letter]):
        return self.image_word(w), self.image_word(inverse(w))

    def image_witness(self, a: Sequence[Letter], conjugators: Sequence[Sequence[Letter]]):
        """Image of ``w_{n,a}`` computed level by level from (image, inverse image) pairs."""
        F = self.field
        v, vi = self.image_pair(a)
        for k in conjugators:
            kv, kvi = self.image_pair(k)
            c = F.matmul(F.matmul(kv, v), kvi)
            ci = F.matmul(F.matmul(kv, vi), kvi)
            # [v, c] = v^-1 c^-1 v c and its inverse c^-1 v^-1 c v
            v, vi = (
                F.matmul(F.matmul(vi, ci), F.matmul(v, c)),
                F.matmul(F.matmul(ci, vi), F.matmul(c, v)),
            )
        return v

    def is_identity(self, mat) -> bool:
        return mat == self.identity


def specialize_group_char0(spec: GroupSpec, n_vec: Sequence[int], m: int, p: int) -> Specialization:
    if spec.char != 0:
        raise ValueError("spec is not in characteristic 0")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if len(n_vec) != spec.nvars:
        raise ValueError("exponent vector length differs from the number of variables")
    F = FiniteField(p)
    point = [pow(m, n, p) for n in n_vec]
    return Specialization(spec, F, point, {"n_vec": tuple(n_vec), "m": m, "p": p})


def specialize_group_charp(spec: GroupSpec, n_vec: Sequence[int], w: IrreducibleChoice | UniPoly) -> Specialization:
    if spec.char == 0:
        raise ValueError("spec is in characteristic 0")
    modulus = w.w if isinstance(w, IrreducibleChoice) else w
    if modulus.char != spec.char:
        raise ValueError("modulus lives over a different prime field")
    if len(n_vec) != spec.nvars:
        raise ValueError("exponent vector length differs from the number of variables")
    F = FiniteField(spec.char, modulus)
    tau = F.from_unipoly(UniPoly([0, 1], spec.char))
    point = [F.pow(tau, n) for n in n_vec]
    return Specialization(spec, F, point, {"n_vec": tuple(n_vec), "w": modulus})
