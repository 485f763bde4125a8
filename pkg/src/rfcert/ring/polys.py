"""Sparse multivariate and dense univariate polynomials over Z or F_p."""

from __future__ import annotations

from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence


class StructureError(ValueError):
    """Operands live in different rings (arity or characteristic mismatch)."""


def _grlex_key(exp: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exp), exp)


class MultiPoly:
    """Polynomial in ``nvars`` variables T1..Ts with integer or F_p coefficients.

    Terms are kept in a dict keyed by exponent tuples; zero coefficients are
    never stored and residues are reduced into ``[0, p)``, so ``==`` is a
    structural comparison.
    """

    __slots__ = ("nvars", "char", "_terms", "_hash")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[tuple[int, ...], int] | Iterable[tuple[tuple[int, ...], int]] = (),
        char: int = 0,
    ):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        if char < 0:
            raise ValueError("characteristic must be 0 or a prime")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], int] = {}
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise StructureError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            clean[exp] = clean.get(exp, 0) + int(coef)
        if char:
            clean = {e: c % char for e, c in clean.items()}
        self.nvars = nvars
        self.char = char
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash: int | None = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[tuple[int, ...], int], char: int) -> MultiPoly:
        # terms must already be reduced and free of zeros
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.char = char
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, nvars: int, char: int = 0) -> MultiPoly:
        return cls._raw(nvars, {}, char)

    @classmethod
    def constant(cls, value: int, nvars: int, char: int = 0) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: value}, char)

    @classmethod
    def one(cls, nvars: int, char: int = 0) -> MultiPoly:
        return cls.constant(1, nvars, char)

    @classmethod
    def var(cls, index: int, nvars: int, char: int = 0) -> MultiPoly:
        """The variable T_{index+1}."""
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): 1}, char)

    # basic queries

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self._terms), default=-1)

    def max_abs_coeff(self) -> int:
        if self.char:
            raise StructureError("coefficient magnitude is undefined in positive characteristic")
        return max((abs(c) for c in self._terms.values()), default=0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    # arithmetic

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars or other.char != self.char:
                raise StructureError(
                    f"ring mismatch: ({self.nvars} vars, char {self.char}) vs "
                    f"({other.nvars} vars, char {other.char})"
                )
            return other
        if isinstance(other, int):
            return MultiPoly.constant(other, self.nvars, self.char)
        return NotImplemented

    def _combine(self, other: MultiPoly, sign: int) -> MultiPoly:
        out = dict(self._terms)
        p = self.char
        for e, c in other._terms.items():
            v = out.get(e, 0) + sign * c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out, p)

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._combine(other, -1)

    def __rsub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._combine(self, -1)

    def __neg__(self) -> MultiPoly:
        p = self.char
        if p:
            return MultiPoly._raw(self.nvars, {e: (-c) % p for e, c in self._terms.items()}, p)
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()}, 0)

    def __mul__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.char
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return MultiPoly._raw(self.nvars, out, p)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.one(self.nvars, self.char)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> MultiPoly:
        return self * MultiPoly.constant(c, self.nvars, self.char)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.constant(other, self.nvars, self.char)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars and self.char == other.char and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.char, frozenset(self._terms.items())))
        return self._hash

    def exact_div(self, divisor: MultiPoly) -> MultiPoly | None:
        """Quotient ``self / divisor`` if it lies in the same polynomial ring, else None.

        A single polynomial is a Groebner basis of the ideal it generates, so a
        zero remainder under grlex division decides divisibility. Over Z a
        leading coefficient that does not divide the current one means the
        quotient leaves Z[T] and None is returned.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.char
        lead_exp, lead_c = max(divisor._terms.items(), key=lambda t: _grlex_key(t[0]))
        lead_inv = pow(lead_c, -1, p) if p else None
        rem = dict(self._terms)
        quot: dict[tuple[int, ...], int] = {}
        while rem:
            e, c = max(rem.items(), key=lambda t: _grlex_key(t[0]))
            shift = tuple(a - b for a, b in zip(e, lead_exp))
            if any(s < 0 for s in shift):
                return None
            if p:
                q = (c * lead_inv) % p
            else:
                if c % lead_c:
                    return None
                q = c // lead_c
            quot[shift] = q
            for de, dc in divisor._terms.items():
                te = tuple(a + b for a, b in zip(de, shift))
                v = rem.get(te, 0) - q * dc
                if p:
                    v %= p
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return MultiPoly._raw(self.nvars, quot, p)

    # structural maps

    def with_char(self, p: int) -> MultiPoly:
        """Reduce integer coefficients modulo ``p``."""
        if self.char and self.char != p:
            raise StructureError("cannot change a nonzero characteristic")
        return MultiPoly(self.nvars, self._terms, p)

    def split_first_variable(self) -> tuple[int, MultiPoly, MultiPoly]:
        """Write ``self = (h0 + T1*h1) * T1**k`` with h0 free of T1.

        Returns ``(k, h0, h1)`` where ``h0`` lives in the ring on T2..Ts and
        ``h1`` in the full ring. ``h0`` is nonzero whenever ``self`` is.
        """
        if self.nvars == 0:
            raise StructureError("no variable to split off")
        if not self._terms:
            return 0, MultiPoly.zero(self.nvars - 1, self.char), MultiPoly.zero(self.nvars, self.char)
        k = min(e[0] for e in self._terms)
        h0: dict[tuple[int, ...], int] = {}
        h1: dict[tuple[int, ...], int] = {}
        for e, c in self._terms.items():
            first = e[0] - k
            if first == 0:
                h0[e[1:]] = c
            else:
                h1[(first - 1,) + e[1:]] = c
        return (
            k,
            MultiPoly._raw(self.nvars - 1, h0, self.char),
            MultiPoly._raw(self.nvars, h1, self.char),
        )

    def substitute_powers(self, n_vec: Sequence[int]) -> UniPoly:
        """Evaluate at ``(tau**n_1, ..., tau**n_s)`` collecting coefficients exactly."""
        if len(n_vec) != self.nvars:
            raise StructureError(f"expected {self.nvars} exponents, got {len(n_vec)}")
        if any(n < 0 for n in n_vec):
            raise ValueError("exponents must be nonnegative")
        acc: dict[int, int] = {}
        for e, c in self._terms.items():
            d = sum(a * n for a, n in zip(e, n_vec))
            acc[d] = acc.get(d, 0) + c
        if not acc:
            return UniPoly((), self.char)
        coeffs = [0] * (max(acc) + 1)
        for d, c in acc.items():
            coeffs[d] = c
        return UniPoly(coeffs, self.char)

    def evaluate(self, point: Sequence[int], modulus: int | None = None) -> int:
        if len(point) != self.nvars:
            raise StructureError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                term *= pow(x, k, modulus) if modulus else x**k
            total += term
            if modulus:
                total %= modulus
        if self.char:
            total %= self.char
        return total

    # display

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"T{i + 1}" if k == 1 else f"T{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, nvars={self.nvars}, char={self.char})"


class UniPoly:
    """Dense polynomial in one variable tau, coefficients low degree first."""

    __slots__ = ("coeffs", "char")

    def __init__(self, coeffs: Iterable[int] = (), char: int = 0):
        cs = [int(c) for c in coeffs]
        if char:
            cs = [c % char for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)
        self.char = char

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1, char: int = 0) -> UniPoly:
        return cls([0] * degree + [coeff], char)

    @classmethod
    def from_int_code(cls, code: int, p: int) -> UniPoly:
        """Inverse of :meth:`int_code`: base-p digits become coefficients."""
        cs = []
        while code:
            code, r = divmod(code, p)
            cs.append(r)
        return cls(cs, p)

    def int_code(self) -> int:
        if not self.char:
            raise StructureError("integer encoding only defined over F_p")
        return sum(c * self.char**i for i, c in enumerate(self.coeffs))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading() == 1

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            if other.char != self.char:
                raise StructureError(f"characteristic mismatch: {self.char} vs {other.char}")
            return other
        if isinstance(other, int):
            return UniPoly([other], self.char)
        return NotImplemented

    def __add__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.char)

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs], self.char)

    def __sub__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> UniPoly:
        return (-self) + other

    def __mul__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.char)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.char)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UniPoly:
        result = UniPoly([1], self.char)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = UniPoly([other], self.char)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.char == other.char and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.char, self.coeffs))

    def divmod(self, divisor: UniPoly) -> tuple[UniPoly, UniPoly]:
        """Euclidean division. Over Z the divisor must have leading coefficient +-1."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.char
        lead = divisor.leading()
        if p:
            lead_inv = pow(lead, -1, p)
        elif lead in (1, -1):
            lead_inv = lead
        else:
            raise StructureError("division over Z needs a divisor with unit leading coefficient")
        rem = list(self.coeffs)
        dd = divisor.degree()
        quot = [0] * max(len(rem) - dd, 0)
        dcs = divisor.coeffs
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if p:
                c %= p
            if not c:
                continue
            q = c * lead_inv
            if p:
                q %= p
            quot[i - dd] = q
            for j, dc in enumerate(dcs):
                rem[i - dd + j] -= q * dc
        return UniPoly(quot, p), UniPoly(rem[:dd], p)

    def __mod__(self, divisor: UniPoly) -> UniPoly:
        return self.divmod(divisor)[1]

    def divides(self, other: UniPoly) -> bool:
        return other.divmod(self)[1].is_zero()

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.char:
            acc %= self.char
        return acc

    def eval_mod(self, m: int, p: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * m + c) % p
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces: list[str] = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mono = "" if d == 0 else ("tau" if d == 1 else f"tau^{d}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"UniPoly({str(self)!r}, char={self.char})"


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Dispatch helper mirroring the three ring operations by name."""
    if a.nvars != b.nvars or a.char != b.char:
        raise StructureError("operands must share arity and characteristic")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def all_exponent_vectors(nvars: int, bound: int) -> Iterable[tuple[int, ...]]:
    """Every vector in {0..bound}^nvars in lexicographic order."""
    return _cartesian(range(bound + 1), repeat=nvars)
