"""Finite groups of Lie type: orders, Tits exceptions, and small concrete representations."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from itertools import combinations_with_replacement, permutations
from math import gcd, log2, prod
from typing import Sequence

from .finite_groups import CapacityError, FiniteGroup, lcm, perm_inv, perm_mul
from .ring import FiniteField, UniPoly, gf, prime_power

CLASSICAL = ("A", "B", "C", "D", "2A")
EXCEPTIONAL = ("G2", "F4", "E6", "E7", "E8", "2B2", "2G2", "2F4", "3D4", "2E6")
_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "2A": 2}


@dataclass(frozen=True)
class LieTypeId:
    family: str
    rank: int
    q: int

    def __post_init__(self):
        if self.family in CLASSICAL:
            if self.rank < _MIN_RANK[self.family]:
                raise ValueError(f"family {self.family} needs rank >= {_MIN_RANK[self.family]}")
        elif self.family in EXCEPTIONAL:
            expected = int(re.sub(r"^\d", "", self.family)[1:])
            if self.rank != expected:
                raise ValueError(f"{self.family} has rank {expected}")
        else:
            raise ValueError(f"unknown family {self.family!r}")
        p, e = prime_power(self.q)
        if self.family in ("2B2", "2F4") and (p != 2 or e % 2 == 0):
            raise ValueError(f"{self.family}(q) needs q an odd power of 2")
        if self.family == "2G2" and (p != 3 or e % 2 == 0):
            raise ValueError("2G2(q) needs q an odd power of 3")

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def e(self) -> int:
        return prime_power(self.q)[1]

    def __str__(self) -> str:
        if self.family in EXCEPTIONAL:
            return f"{self.family}({self.q})"
        return f"{self.family}{self.rank}({self.q})"


def parse_lie_id(text: str, q: int | None = None) -> LieTypeId:
    """Read ``A1``, ``2A2`` or ``G2`` style names, optionally with ``(q)`` attached."""
    m = re.fullmatch(r"\s*(2A|[ABCD])(\d+)\s*(?:\((\d+)\))?\s*", text)
    if m:
        fam, rank, qq = m.group(1), int(m.group(2)), m.group(3)
    else:
        m = re.fullmatch(r"\s*(G2|F4|E6|E7|E8|2B2|2G2|2F4|3D4|2E6)\s*(?:\((\d+)\))?\s*", text)
        if not m:
            raise ValueError(f"cannot read a Lie type from {text!r}")
        fam, qq = m.group(1), m.group(2)
        rank = int(re.sub(r"^\d", "", fam)[1:])
    if qq is not None:
        q = int(qq)
    if q is None:
        raise ValueError("field size q is missing")
    return LieTypeId(fam, rank, q)


def _prod(it) -> int:
    return prod(it, start=1)


def lie_order(lid: LieTypeId, require_simple: bool = False) -> int:
    """Order of the adjoint simple group (the group modulo its centre)."""
    if require_simple and is_tits_exception(lid):
        raise ValueError(f"{lid} is not simple")
    n, q, f = lid.rank, lid.q, lid.family
    if f == "A":
        return q ** (n * (n + 1) // 2) * _prod(q**i - 1 for i in range(2, n + 2)) // gcd(n + 1, q - 1)
    if f in ("B", "C"):
        return q ** (n * n) * _prod(q ** (2 * i) - 1 for i in range(1, n + 1)) // gcd(2, q - 1)
    if f == "D":
        return (q ** (n * (n - 1)) * (q**n - 1) * _prod(q ** (2 * i) - 1 for i in range(1, n))
                // gcd(4, q**n - 1))
    if f == "2A":
        return (q ** (n * (n + 1) // 2) * _prod(q**i - (-1) ** i for i in range(2, n + 2))
                // gcd(n + 1, q + 1))
    return _EXCEPTIONAL_ORDER[f](q)


_EXCEPTIONAL_ORDER = {
    "G2": lambda q: q**6 * (q**6 - 1) * (q**2 - 1),
    "F4": lambda q: q**24 * (q**12 - 1) * (q**8 - 1) * (q**6 - 1) * (q**2 - 1),
    "E6": lambda q: q**36 * _prod(q**i - 1 for i in (12, 9, 8, 6, 5, 2)) // gcd(3, q - 1),
    "E7": lambda q: q**63 * _prod(q**i - 1 for i in (18, 14, 12, 10, 8, 6, 2)) // gcd(2, q - 1),
    "E8": lambda q: q**120 * _prod(q**i - 1 for i in (30, 24, 20, 18, 14, 12, 8, 2)),
    "2B2": lambda q: q**2 * (q**2 + 1) * (q - 1),
    "2G2": lambda q: q**3 * (q**3 + 1) * (q - 1),
    "2F4": lambda q: q**12 * (q**6 + 1) * (q**4 - 1) * (q**3 + 1) * (q - 1),
    "3D4": lambda q: q**12 * (q**8 + q**4 + 1) * (q**6 - 1) * (q**2 - 1),
    "2E6": lambda q: q**36 * _prod(q**i - (-1) ** i for i in (12, 9, 8, 6, 5, 2)) // gcd(3, q + 1),
}

TITS_EXCEPTIONS = ["SL_2(2)", "SL_2(3)", "SU_3(2)", "Sp_4(2)", "G_2(2)", "²B_2(2)", "²G_2(3)", "²F_4(2)"]

# the same groups in the family/rank notation used by LieTypeId
_TITS_IDS = {("A", 1, 2), ("A", 1, 3), ("2A", 2, 2), ("B", 2, 2), ("G2", 2, 2),
             ("2B2", 2, 2), ("2G2", 2, 3), ("2F4", 4, 2)}


def _normalise_name(name: str) -> str:
    return name.replace("²", "2").replace("_", "").replace("^", "").replace(" ", "").upper()


_TITS_NORMALISED = {_normalise_name(n) for n in TITS_EXCEPTIONS}


def is_tits_exception(name: str | LieTypeId) -> bool:
    if isinstance(name, LieTypeId):
        return (name.family, name.rank, name.q) in _TITS_IDS
    return _normalise_name(name) in _TITS_NORMALISED


def extension_bounded(ids: Sequence[LieTypeId], e: int) -> bool:
    return all(lid.e <= e for lid in ids)


def extension_bound_from_dimension(ell: int) -> int:
    if ell < 1:
        raise ValueError("dimension must be positive")
    return ell * (ell - 1) // 2


# concrete representations


@dataclass
class FiniteRep:
    field: FiniteField
    gens: list
    dim: int
    name: str = ""

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.dim or any(len(r) != self.dim for r in g):
                raise ValueError("generator has the wrong shape")
            if self.field.det(g) == 0:
                raise ValueError("generators must be invertible")

    def identity(self):
        return self.field.identity(self.dim)

    def mul(self, a, b):
        return self.field.matmul(a, b)

    def group(self, cap: int | None = 10**5) -> FiniteGroup:
        gens = self.gens or [self.identity()]
        return FiniteGroup.generated(gens, self.field.matmul, self.identity(), self.name, cap, self.field.matinv)


def _field_basis(F: FiniteField) -> list[int]:
    return [F.from_unipoly(UniPoly.monomial(i, 1, F.p)) for i in range(F.degree)]


def sl_rep(n: int, q: int) -> FiniteRep:
    """SL_n(q) generated by elementary transvections with entries in a basis of F_q over F_p."""
    F = gf(q)
    gens = []
    for a in _field_basis(F):
        for i in range(n):
            for j in range(n):
                if i != j:
                    m = [list(r) for r in F.identity(n)]
                    m[i][j] = a
                    gens.append(tuple(tuple(r) for r in m))
    return FiniteRep(F, gens, n, f"SL{n}({q})")


def _mult_matrix(F: FiniteField, a: int, basis: list[int]) -> list[list[int]]:
    """Matrix over F_p of x -> a*x; column j holds the coordinates of a*basis[j]."""
    k = F.degree
    cols = [F._decode(F.mul(a, b)) for b in basis]
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _expand(F: FiniteField, mat, basis) -> tuple:
    k, w = F.degree, len(mat)
    big = [[0] * (k * w) for _ in range(k * w)]
    for i in range(w):
        for j in range(w):
            blk = _mult_matrix(F, mat[i][j], basis)
            for r in range(k):
                for c in range(k):
                    big[i * k + r][j * k + c] = blk[r][c]
    return tuple(tuple(r) for r in big)


def frobenius_operator(F: FiniteField, w: int) -> tuple:
    """Block-diagonal matrix of x -> x^p on (F_{p^k})^w viewed over F_p."""
    k = F.degree
    basis = _field_basis(F)
    cols = [F._decode(F.frobenius(b)) for b in basis]
    blk = [[cols[j][i] for j in range(k)] for i in range(k)]
    big = [[0] * (k * w) for _ in range(k * w)]
    for i in range(w):
        for r in range(k):
            for c in range(k):
                big[i * k + r][i * k + c] = blk[r][c]
    return tuple(tuple(r) for r in big)


class FrobeniusSemidirect:
    """``G ⋊ C_k`` over F_p from a representation of G over F_{p^k}.

    ``embed(g, t)`` sends the pair (g, x^t) to ``expand(g) * P^t`` where P is
    the block Frobenius operator; pairs multiply by
    ``(g1, t1)(g2, t2) = (g1 * Frob^t1(g2), t1 + t2)``.
    """

    def __init__(self, rep: FiniteRep):
        self.rep = rep
        self.big = FiniteField(rep.field.p)
        self.k = rep.field.degree
        self.basis = _field_basis(rep.field)
        self.P = frobenius_operator(rep.field, rep.dim)
        self._powers = [self.big.identity(self.k * rep.dim)]
        for _ in range(1, max(self.k, 1)):
            self._powers.append(self.big.matmul(self._powers[-1], self.P))

    def expand(self, mat):
        return _expand(self.rep.field, mat, self.basis)

    def frob(self, mat, t: int = 1):
        F = self.rep.field
        out = mat
        for _ in range(t % self.k if self.k else 0):
            out = tuple(tuple(F.frobenius(x) for x in row) for row in out)
        return out

    def embed(self, g, t: int):
        return self.big.matmul(self.expand(g), self._powers[t % self.k])

    def pair_mul(self, a, b):
        (g1, t1), (g2, t2) = a, b
        return (self.rep.mul(g1, self.frob(g2, t1)), (t1 + t2) % self.k)

    def elements(self, cap: int | None = 10**5) -> list:
        G = self.rep.group(cap)
        return [(g, t) for g in G.elements for t in range(self.k)]

    def as_rep(self) -> FiniteRep:
        gens = [self.expand(g) for g in self.rep.gens]
        if self.k > 1:
            gens.append(self.P)
        name = f"{self.rep.name}:C{self.k}" if self.rep.name else ""
        return FiniteRep(self.big, gens, self.k * self.rep.dim, name)


def frobenius_semidirect_rep(rep: FiniteRep) -> FiniteRep:
    if rep.field.degree == 1:
        return rep
    return FrobeniusSemidirect(rep).as_rep()


def _perm_block_matrix(F: FiniteField, sigma: Sequence[int], w: int):
    """Block permutation matrix with an identity block at (sigma[i], i)."""
    m = len(sigma)
    big = [[0] * (m * w) for _ in range(m * w)]
    for i, si in enumerate(sigma):
        for r in range(w):
            big[si * w + r][i * w + r] = 1
    return tuple(tuple(r) for r in big)


def _block_diag(F: FiniteField, blocks: Sequence) -> tuple:
    w = len(blocks[0])
    n = w * len(blocks)
    big = [[0] * n for _ in range(n)]
    for b, blk in enumerate(blocks):
        for r in range(w):
            for c in range(w):
                big[b * w + r][b * w + c] = blk[r][c]
    return tuple(tuple(r) for r in big)


class WreathRep:
    """``H^m ⋊ Sym(m)`` acting block-wise: (h; sigma) -> diag(h) * P_sigma."""

    def __init__(self, rep: FiniteRep, m: int):
        if m < 1:
            raise ValueError("multiplicity must be positive")
        self.rep = rep
        self.m = m

    def embed(self, hs: Sequence, sigma: Sequence[int]):
        F = self.rep.field
        return F.matmul(_block_diag(F, hs), _perm_block_matrix(F, sigma, self.rep.dim))

    def pair_mul(self, a, b):
        (h, s), (h2, s2) = a, b
        s_inv = perm_inv(tuple(s))
        moved = [h2[s_inv[j]] for j in range(self.m)]
        hs = tuple(self.rep.mul(x, y) for x, y in zip(h, moved))
        # composition as functions: (s s2)(i) = s(s2(i))
        return (hs, perm_mul(tuple(s2), tuple(s)))

    def as_rep(self) -> FiniteRep:
        F, w, m = self.rep.field, self.rep.dim, self.m
        ident = F.identity(w)
        gens = []
        for g in self.rep.gens:
            for i in range(m):
                blocks = [ident] * m
                blocks[i] = g
                gens.append(_block_diag(F, blocks))
        if m > 1:
            gens.append(_perm_block_matrix(F, [1, 0] + list(range(2, m)), w))
        if m > 2:
            gens.append(_perm_block_matrix(F, [(i + 1) % m for i in range(m)], w))
        name = f"{self.rep.name}wr{m}" if self.rep.name else ""
        return FiniteRep(F, gens, m * w, name)


def product_aut_rep(rep: FiniteRep, m: int) -> FiniteRep:
    if m == 1:
        return rep
    return WreathRep(rep, m).as_rep()


def m1_bruteforce(rep: FiniteRep | FiniteGroup, cap: int = 10**5) -> int:
    G = rep if isinstance(rep, FiniteGroup) else rep.group(cap)
    if G.order > cap:
        raise CapacityError(f"group order {G.order} exceeds {cap}")
    return G.max_element_order()


def m1_power(orders: set[int] | Sequence[int], ell: int) -> int:
    """Largest element order in H^ell given the set of element orders of H."""
    orders = sorted(set(orders))
    return max(reduce(lcm, combo, 1) for combo in combinations_with_replacement(orders, ell))


def projective_points(F: FiniteField, dim: int) -> list[tuple[int, ...]]:
    pts = []
    q = F.order
    for lead in range(dim):
        for tail in range(q ** (dim - lead - 1)):
            v = [0] * lead + [1]
            t = tail
            for _ in range(dim - lead - 1):
                t, r = divmod(t, q)
                v.append(r)
            pts.append(tuple(v))
    return pts


def _normalise(F: FiniteField, v: Sequence[int]) -> tuple[int, ...]:
    lead = next(x for x in v if x)
    s = F.inv(lead)
    return tuple(F.mul(s, x) for x in v)


def psl_permutation_group(n: int, q: int, cap: int = 10**6) -> FiniteGroup:
    """PSL_n(q) acting on the points of projective (n-1)-space."""
    F = gf(q)
    pts = projective_points(F, n)
    idx = {p: i for i, p in enumerate(pts)}
    perms = []
    for mat in sl_rep(n, q).gens:
        img = []
        for v in pts:
            w = [0] * n
            for i, x in enumerate(v):
                if x:
                    for j in range(n):
                        w[j] = F.add(w[j], F.mul(x, mat[i][j]))
            img.append(idx[_normalise(F, w)])
        perms.append(tuple(img))
    perms = list(dict.fromkeys(perms))
    return FiniteGroup.from_permutations(perms, name=f"PSL{n}({q})", cap=cap)


@dataclass(frozen=True)
class RankRatio:
    order: int
    m1: int
    ratio: float


def rank_ratio(lid: LieTypeId, ell: int = 1, cap: int = 10**6) -> RankRatio:
    """``log|H^ell| / log m1(H^ell)`` with H the simple group of type A_n(q)."""
    if lid.family != "A":
        raise NotImplementedError("materialisation is implemented for family A only")
    if ell < 1:
        raise ValueError("multiplicity must be positive")
    H = psl_permutation_group(lid.rank + 1, lid.q, cap)
    m1 = m1_power(H.exponent_set(), ell)
    order = H.order**ell
    return RankRatio(order, m1, ell * log2(H.order) / log2(m1))


def lie_info(lid: LieTypeId) -> dict:
    return {
        "id": str(lid),
        "order": lie_order(lid),
        "characteristic": lid.p,
        "extension_degree": lid.e,
        "q": lid.q,
        "tits_exception": is_tits_exception(lid),
    }


def all_permutations(m: int) -> list[tuple[int, ...]]:
    return list(permutations(range(m)))
