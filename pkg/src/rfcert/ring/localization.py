"""Fractions over R[T1..Ts] whose denominators are products of members of S."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .polys import MultiPoly, StructureError


class DenominatorSet:
    """The finite set S of nonzero polynomials that may be inverted."""

    def __init__(self, elements: Sequence[MultiPoly] = (), nvars: int | None = None, char: int = 0):
        uniq: list[MultiPoly] = []
        for s in elements:
            if s.is_zero():
                raise ValueError("denominator set members must be nonzero")
            if s not in uniq:
                uniq.append(s)
        if uniq:
            nvars = uniq[0].nvars if nvars is None else nvars
            char = uniq[0].char
            for s in uniq:
                if s.nvars != nvars or s.char != char:
                    raise StructureError("denominators must share a ring")
        self.elements: tuple[MultiPoly, ...] = tuple(uniq)
        self.nvars = 0 if nvars is None else nvars
        self.char = char

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> MultiPoly:
        return self.elements[i]

    def index(self, poly: MultiPoly) -> int:
        return self.elements.index(poly)


class Localization:
    """The ring R[1/S][T1..Ts] with R = Z (char 0) or F_p."""

    def __init__(self, nvars: int, char: int = 0, denominators: Sequence[MultiPoly] = ()):
        self.nvars = nvars
        self.char = char
        self.S = DenominatorSet(denominators, nvars, char)
        if len(self.S) and (self.S.nvars != nvars or self.S.char != char):
            raise StructureError("denominator set lives in a different ring")
        self._power_cache: dict[tuple[int, int], MultiPoly] = {}

    def __repr__(self) -> str:
        dens = ", ".join(str(s) for s in self.S)
        return f"Localization(char={self.char}, vars={self.nvars}, denoms=[{dens}])"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Localization)
            and self.nvars == other.nvars
            and self.char == other.char
            and self.S.elements == other.S.elements
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.char, self.S.elements))

    def poly(self, value: int | MultiPoly) -> MultiPoly:
        if isinstance(value, int):
            return MultiPoly.constant(value, self.nvars, self.char)
        if value.nvars != self.nvars or value.char != self.char:
            raise StructureError("polynomial lives in a different ring")
        return value

    def elem(self, num: int | MultiPoly, den: Sequence[int] | None = None) -> LocalizedElem:
        den = tuple(den) if den is not None else (0,) * len(self.S)
        return LocalizedElem(self, self.poly(num), den)

    def zero(self) -> LocalizedElem:
        return self.elem(0)

    def one(self) -> LocalizedElem:
        return self.elem(1)

    def s_power(self, i: int, k: int) -> MultiPoly:
        key = (i, k)
        if key not in self._power_cache:
            self._power_cache[key] = self.S[i] ** k
        return self._power_cache[key]

    def expand(self, exps: Sequence[int]) -> MultiPoly:
        """The polynomial prod S_i**exps[i]."""
        out = MultiPoly.one(self.nvars, self.char)
        for i, k in enumerate(exps):
            if k:
                out = out * self.s_power(i, k)
        return out

    def divide_by(self, num: MultiPoly, divisor: MultiPoly) -> LocalizedElem:
        """``num / divisor`` where divisor must factor as +-prod S_i**e_i."""
        exps = [0] * len(self.S)
        rest = divisor
        progress = True
        while progress and not rest.is_constant():
            progress = False
            for i, s in enumerate(self.S):
                if s.is_constant():
                    continue
                q = rest.exact_div(s)
                if q is not None:
                    exps[i] += 1
                    rest = q
                    progress = True
                    break
        if not rest.is_constant():
            raise ValueError(f"denominator {divisor} is not a product of declared denominators")
        c = rest.constant_term()
        if c in (1, -1) or (self.char and c % self.char == 1):
            return LocalizedElem(self, num * c, tuple(exps))
        if self.char:
            return LocalizedElem(self, num * pow(c, -1, self.char), tuple(exps))
        for i, s in enumerate(self.S):
            if s.is_constant():
                k, v = 0, c
                sc = s.constant_term()
                while v % sc == 0 and abs(v) > 1:
                    v //= sc
                    k += 1
                if v in (1, -1):
                    exps[i] += k
                    return LocalizedElem(self, num * v, tuple(exps))
        raise ValueError(f"denominator {divisor} is not a product of declared denominators")


class LocalizedElem:
    """``numerator / prod S_i**den[i]``; never reduced, compared by cross-multiplication."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: Localization, num: MultiPoly, den: tuple[int, ...]):
        if len(den) != len(ring.S):
            raise StructureError("denominator exponent vector has the wrong length")
        if any(k < 0 for k in den):
            raise ValueError("denominator exponents must be nonnegative")
        self.ring = ring
        self.num = num
        self.den = den

    def _coerce(self, other) -> LocalizedElem:
        if isinstance(other, LocalizedElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise StructureError("elements of different localizations")
            return other
        if isinstance(other, (int, MultiPoly)):
            return self.ring.elem(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not any(self.den)

    def __add__(self, other) -> LocalizedElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return LocalizedElem(self.ring, self.num + other.num, self.den)
        common = tuple(max(a, b) for a, b in zip(self.den, other.den))
        ring = self.ring
        a = self.num * ring.expand([c - d for c, d in zip(common, self.den)])
        b = other.num * ring.expand([c - d for c, d in zip(common, other.den)])
        return LocalizedElem(ring, a + b, common)

    __radd__ = __add__

    def __neg__(self) -> LocalizedElem:
        return LocalizedElem(self.ring, -self.num, self.den)

    def __sub__(self, other) -> LocalizedElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LocalizedElem:
        return (-self) + other

    def __mul__(self, other) -> LocalizedElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return self.ring.zero()
        den = tuple(a + b for a, b in zip(self.den, other.den))
        return LocalizedElem(self.ring, self.num * other.num, den)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        ring = self.ring
        return self.num * ring.expand(other.den) == other.num * ring.expand(self.den)

    __hash__ = None  # equality is not structural

    def cleared(self, exps: Sequence[int]) -> MultiPoly:
        """``prod S_i**exps[i] * self`` as a polynomial; exps must dominate ``den``."""
        diff = [e - d for e, d in zip(exps, self.den)]
        if any(k < 0 for k in diff):
            raise ValueError("denominator does not divide the clearing factor")
        return self.num * self.ring.expand(diff)

    def denominator_poly(self) -> MultiPoly:
        return self.ring.expand(self.den)

    def __str__(self) -> str:
        num = str(self.num)
        if not any(self.den):
            return num
        factors = []
        for i, k in enumerate(self.den):
            if k:
                s = self.ring.S[i]
                base = f"({s})" if len(s) > 1 or not _is_atom(s) else str(s)
                factors.append(base if k == 1 else f"{base}^{k}")
        num = f"({num})" if len(self.num) > 1 else num
        den = factors[0] if len(factors) == 1 else "(" + "*".join(factors) + ")"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"LocalizedElem({str(self)!r})"


def _is_atom(s: MultiPoly) -> bool:
    text = str(s)
    return "*" not in text and "^" not in text and not text.startswith("-")


@lru_cache(maxsize=None)
def polynomial_ring(nvars: int, char: int = 0) -> Localization:
    """The localization with S empty, i.e. the plain polynomial ring."""
    return Localization(nvars, char, ())
