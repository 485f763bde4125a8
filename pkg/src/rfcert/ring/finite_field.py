"""Finite fields F_p and F_p[tau]/(w) with elements encoded as small ints.

An element of F_{p^k} is the integer ``sum(c_i * p**i)`` built from its
coefficient vector in the basis 1, tau, ..., tau^(k-1). Prime fields use the
residue itself, so matrices over either kind of field are tuples of ints and
hash cheaply.
"""

from __future__ import annotations

from functools import lru_cache

from .counting import is_prime
from .polys import StructureError, UniPoly

_TABLE_LIMIT = 256


class FiniteField:
    def __init__(self, p: int, modulus: UniPoly | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if modulus is not None:
            if modulus.char != p:
                raise StructureError("modulus must live in F_p[tau]")
            if not modulus.is_monic() or modulus.degree() < 1:
                raise ValueError("modulus must be monic of positive degree")
            if modulus.degree() == 1:
                modulus = None if modulus.coeffs == (0, 1) else modulus
        self.p = p
        self.modulus = modulus
        self.degree = 1 if modulus is None else modulus.degree()
        self.order = p**self.degree
        self._mul_table: list[list[int]] | None = None
        self._inv_table: list[int] | None = None
        if self.degree > 1 and self.order <= _TABLE_LIMIT:
            self._build_tables()

    @classmethod
    def prime(cls, p: int) -> FiniteField:
        return cls(p)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        if self.modulus is None:
            return f"FiniteField(F_{self.p})"
        return f"FiniteField(F_{self.p}[tau]/({self.modulus}))"

    # encoding

    def _decode(self, a: int) -> list[int]:
        out = []
        p = self.p
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _encode(self, coeffs) -> int:
        p = self.p
        acc = 0
        for c in reversed(coeffs):
            acc = acc * p + (c % p)
        return acc

    def from_unipoly(self, f: UniPoly) -> int:
        """Image of ``f`` in the field (reduction modulo the defining polynomial)."""
        if f.char not in (0, self.p):
            raise StructureError("polynomial lives over a different prime field")
        f = UniPoly(f.coeffs, self.p)
        if self.modulus is None:
            return f(0) % self.p
        return self._encode(list((f % self.modulus).coeffs) + [0] * self.degree)

    def to_unipoly(self, a: int) -> UniPoly:
        return UniPoly(self._decode(a), self.p)

    def from_int(self, n: int) -> int:
        return n % self.p

    def generator_element(self) -> int:
        """The class of tau."""
        return self.from_unipoly(UniPoly([0, 1], self.p))

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.p
        return self._encode([x + y for x, y in zip(self._decode(a), self._decode(b))])

    def neg(self, a: int) -> int:
        if self.degree == 1:
            return (-a) % self.p
        return self._encode([-x for x in self._decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        prod = UniPoly(self._decode(a), self.p) * UniPoly(self._decode(b), self.p)
        return self._encode(list((prod % self.modulus).coeffs) + [0] * self.degree)

    def mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_slow(a, b)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.degree == 1:
            return pow(a, -1, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def _build_tables(self) -> None:
        q = self.order
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                v = self._mul_slow(a, b)
                table[a][b] = v
                table[b][a] = v
        self._mul_table = table
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if table[a][b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv

    def elements(self) -> range:
        return range(self.order)

    # matrices over the field (tuples of tuples of ints)

    def identity(self, n: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def matmul(self, a, b):
        n, m, k = len(a), len(b), len(b[0])
        if self.degree == 1:
            p = self.p
            cols = list(zip(*b))
            return tuple(
                tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a
            )
        add, mul = self.add, self.mul
        out = []
        for i in range(n):
            row = []
            for j in range(k):
                acc = 0
                for t in range(m):
                    acc = add(acc, mul(a[i][t], b[t][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def matinv(self, a):
        """Gauss-Jordan inverse; raises ZeroDivisionError for singular input."""
        n = len(a)
        rows = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(a)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("singular matrix")
            rows[col], rows[pivot] = rows[pivot], rows[col]
            s = self.inv(rows[col][col])
            rows[col] = [self.mul(s, x) for x in rows[col]]
            for r in range(n):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [self.sub(x, self.mul(f, y)) for x, y in zip(rows[r], rows[col])]
        return tuple(tuple(r[n:]) for r in rows)

    def det(self, a) -> int:
        n = len(a)
        rows = [list(r) for r in a]
        det = 1
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col]), None)
            if pivot is None:
                return 0
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                det = self.neg(det)
            det = self.mul(det, rows[col][col])
            s = self.inv(rows[col][col])
            for r in range(col + 1, n):
                if rows[r][col]:
                    f = self.mul(rows[r][col], s)
                    rows[r] = [self.sub(x, self.mul(f, y)) for x, y in zip(rows[r], rows[col])]
        return det


@lru_cache(maxsize=None)
def gf(q: int) -> FiniteField:
    """The field with q elements, presented by the first irreducible of each degree."""
    from .counting import enumerate_irreducibles, prime_power

    p, e = prime_power(q)
    if e == 1:
        return FiniteField(p)
    modulus = next(w for w in enumerate_irreducibles(p, e) if w.degree() == e)
    return FiniteField(p, modulus)
