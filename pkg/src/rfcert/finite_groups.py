"""Brute-force finite groups: closure, normal closure, derived series, element orders.

A :class:`FiniteGroup` is an explicit list of hashable elements with a
multiplication callable. Permutations are tuples ``p`` with ``p[i]`` the
image of ``i``; the product ``mul(p, q)`` applies ``p`` first, so words are
evaluated left to right like matrices acting on row vectors.
"""

from __future__ import annotations

from collections import deque
from itertools import product as _product
from math import gcd
from typing import Callable, Hashable, Iterable, Sequence

from .words import Letter

Elem = Hashable


class CapacityError(RuntimeError):
    """An enumeration exceeded its element budget."""


def perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(q[i] for i in p)


def perm_inv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]], one_based: bool = True) -> tuple[int, ...]:
    img = list(range(n))
    shift = 1 if one_based else 0
    for cyc in cycles:
        cyc = [c - shift for c in cyc]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


def closure(
    gens: Sequence[Elem],
    mul: Callable[[Elem, Elem], Elem],
    identity: Elem,
    cap: int | None = None,
) -> list[Elem]:
    """All products of ``gens`` (BFS on the right Cayley graph), identity first.

    For a finite group the monoid generated by ``gens`` is already a group,
    so no inverses are needed.
    """
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    gens = [g for g in dict.fromkeys(gens) if g != identity]
    while queue:
        a = queue.popleft()
        for g in gens:
            b = mul(a, g)
            if b not in seen:
                seen.add(b)
                order.append(b)
                if cap is not None and len(order) > cap:
                    raise CapacityError(f"closure exceeds {cap} elements")
                queue.append(b)
    return order


class FiniteGroup:
    """A finite group given by its full element list."""

    TABLE_LIMIT = 1500

    def __init__(
        self,
        elements: Sequence[Elem],
        mul: Callable[[Elem, Elem], Elem],
        identity: Elem,
        gens: Sequence[Elem] | None = None,
        name: str = "",
        inv: Callable[[Elem], Elem] | None = None,
    ):
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if identity not in self.index:
            raise ValueError("identity is not among the elements")
        self.mul = mul
        self.identity = identity
        self.gens = list(gens) if gens is not None else [e for e in self.elements if e != identity]
        self.name = name
        self._inv = inv
        self._inv_cache: dict[Elem, Elem] = {}
        self._order_cache: dict[Elem, int] = {}
        self._table: list[list[int]] | None = None

    @classmethod
    def generated(
        cls,
        gens: Sequence[Elem],
        mul: Callable[[Elem, Elem], Elem],
        identity: Elem,
        name: str = "",
        cap: int | None = None,
        inv: Callable[[Elem], Elem] | None = None,
    ) -> FiniteGroup:
        return cls(closure(gens, mul, identity, cap), mul, identity, gens, name, inv)

    @classmethod
    def from_permutations(cls, gens: Sequence[tuple[int, ...]], name: str = "", cap: int | None = None) -> FiniteGroup:
        if not gens:
            raise ValueError("need at least one generator (use the identity for the trivial group)")
        ident = tuple(range(len(gens[0])))
        return cls.generated(gens, perm_mul, ident, name, cap, perm_inv)

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
        """Group on ``0..n-1`` with ``table[a][b] = a*b`` and identity 0."""
        rows = [list(r) for r in table]
        g = cls(range(len(rows)), lambda a, b: rows[a][b], 0, None, name)
        g._table = rows
        g.gens = g.small_generating_set()
        return g

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: Elem) -> bool:
        return x in self.index

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"

    # element arithmetic

    def inv(self, x: Elem) -> Elem:
        if self._inv is not None:
            return self._inv(x)
        hit = self._inv_cache.get(x)
        if hit is not None:
            return hit
        # x^(ord-1) = x^-1
        y = self.identity
        for _ in range(self.element_order(x) - 1):
            y = self.mul(y, x)
        self._inv_cache[x] = y
        return y

    def pow(self, x: Elem, n: int) -> Elem:
        if n < 0:
            x, n = self.inv(x), -n
        out = self.identity
        base = x
        while n:
            if n & 1:
                out = self.mul(out, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return out

    def element_order(self, x: Elem) -> int:
        hit = self._order_cache.get(x)
        if hit is not None:
            return hit
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
            if k > self.order:
                raise ValueError("element does not have finite order inside the group")
        self._order_cache[x] = k
        return k

    def element_orders(self) -> list[int]:
        return [self.element_order(x) for x in self.elements]

    def exponent_set(self) -> set[int]:
        return set(self.element_orders())

    def max_element_order(self) -> int:
        return max(self.element_orders())

    def commutator(self, a: Elem, b: Elem) -> Elem:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def conj(self, g: Elem, x: Elem) -> Elem:
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def evaluate(self, w: Sequence[Letter], images: Sequence[Elem]) -> Elem:
        """Image of a word under the map sending generator i to ``images[i]``."""
        out = self.identity
        invs: dict[int, Elem] = {}
        for g, s in w:
            if s == 1:
                out = self.mul(out, images[g])
            else:
                if g not in invs:
                    invs[g] = self.inv(images[g])
                out = self.mul(out, invs[g])
        return out

    def table(self) -> list[list[int]]:
        """Cayley table on element indices (built lazily, capped)."""
        if self._table is None:
            if self.order > self.TABLE_LIMIT:
                raise CapacityError(f"Cayley table for order {self.order} exceeds {self.TABLE_LIMIT}")
            els, idx, mul = self.elements, self.index, self.mul
            self._table = [[idx[mul(a, b)] for b in els] for a in els]
        return self._table

    # subgroups

    def subgroup(self, gens: Iterable[Elem], name: str = "") -> FiniteGroup:
        gens = [g for g in gens if g != self.identity]
        elems = closure(gens, self.mul, self.identity)
        sub = FiniteGroup(elems, self.mul, self.identity, gens, name, self._inv)
        sub._inv_cache = self._inv_cache
        sub._order_cache = self._order_cache
        return sub

    def trivial_subgroup(self) -> FiniteGroup:
        return self.subgroup([])

    def normal_closure(self, xs: Iterable[Elem], within: FiniteGroup | None = None) -> FiniteGroup:
        """Smallest normal subgroup of ``within`` (default: self) containing xs."""
        ambient = within if within is not None else self
        conj_gens = ambient.gens or [ambient.identity]
        gens: list[Elem] = [x for x in dict.fromkeys(xs) if x != self.identity]
        members = set(closure(gens, self.mul, self.identity))
        queue = deque(gens)
        while queue:
            n = queue.popleft()
            for g in conj_gens:
                c = ambient.conj(g, n)
                if c not in members:
                    gens.append(c)
                    members = set(closure(gens, self.mul, self.identity))
                    queue.append(c)
        return self.subgroup(gens)

    def derived_subgroup(self) -> FiniteGroup:
        gens = self.gens or []
        comms = [self.commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
        return self.normal_closure(comms, within=self)

    def derived_series(self, depth: int | None = None) -> list[FiniteGroup]:
        """``[G, D^1 G, D^2 G, ...]`` until it stabilises (or ``depth`` steps)."""
        series = [self]
        while depth is None or len(series) <= depth:
            nxt = series[-1].derived_subgroup()
            if nxt.order == series[-1].order:
                if depth is None:
                    break
            series.append(nxt)
        return series

    def derived_term(self, n: int) -> FiniteGroup:
        g = self
        for _ in range(n):
            d = g.derived_subgroup()
            if d.order == g.order:
                return d
            g = d
        return g

    def is_subgroup_of(self, other: FiniteGroup) -> bool:
        return all(x in other for x in self.elements)

    def is_abelian(self) -> bool:
        gens = self.gens
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].order == 1

    def center(self) -> FiniteGroup:
        z = [x for x in self.elements if all(self.mul(x, g) == self.mul(g, x) for g in self.gens)]
        return self.subgroup(z)

    def generates(self, xs: Sequence[Elem]) -> bool:
        try:
            return len(closure(xs, self.mul, self.identity, cap=self.order)) == self.order
        except CapacityError:
            return False

    def small_generating_set(self) -> list[Elem]:
        """Greedy generating set, preferring elements of large order."""
        if self.order == 1:
            return []
        ranked = sorted(self.elements, key=lambda e: (-self.element_order(e), self.index[e]))
        chosen: list[Elem] = []
        span = {self.identity}
        for e in ranked:
            if e not in span:
                chosen.append(e)
                span = set(closure(chosen, self.mul, self.identity))
                if len(span) == self.order:
                    break
        return chosen

    def conjugacy_class_reps(self) -> list[Elem]:
        seen: set = set()
        reps = []
        for x in self.elements:
            if x in seen:
                continue
            reps.append(x)
            orbit = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for g in self.gens:
                    c = self.conj(g, y)
                    if c not in orbit:
                        orbit.add(c)
                        frontier.append(c)
            seen |= orbit
        return reps


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "") -> FiniteGroup:
    def mul(a, b):
        return (g.mul(a[0], b[0]), h.mul(a[1], b[1]))

    ident = (g.identity, h.identity)
    gens = [(x, h.identity) for x in g.gens] + [(g.identity, y) for y in h.gens]
    elems = [(a, b) for a in g.elements for b in h.elements]
    return FiniteGroup(elems, mul, ident, gens, name or f"{g.name}x{h.name}",
                       lambda a: (g.inv(a[0]), h.inv(a[1])))


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return FiniteGroup.from_permutations([tuple(range(max(n, 1)))], name=f"S{n}")
    gens = [perm_from_cycles(n, [range(1, n + 1)])]
    gens.append(perm_from_cycles(n, [(1, 2)]))
    return FiniteGroup.from_permutations(gens, name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    if n <= 2:
        return FiniteGroup.from_permutations([tuple(range(max(n, 1)))], name=f"A{n}")
    gens = [perm_from_cycles(n, [(1, 2, k)]) for k in range(3, n + 1)]
    return FiniteGroup.from_permutations(gens, name=f"A{n}")


def cyclic_group(n: int) -> FiniteGroup:
    gen = perm_from_cycles(n, [range(1, n + 1)]) if n > 1 else (0,)
    return FiniteGroup.from_permutations([gen], name=f"C{n}")


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group with ``order`` elements (symmetries of an order/2-gon)."""
    if order % 2 or order < 2:
        raise ValueError("dihedral groups have even order")
    n = order // 2
    if n == 1:
        return FiniteGroup.from_permutations([(1, 0)], name="D2")
    if n == 2:
        return FiniteGroup.from_permutations([(1, 0, 3, 2), (2, 3, 0, 1)], name="D4")
    rot = perm_from_cycles(n, [range(1, n + 1)])
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, ref], name=f"D{order}")


def product_group(factors: Sequence[FiniteGroup], name: str = "", gens: Sequence[tuple] | None = None,
                  cap: int | None = None) -> FiniteGroup:
    """Direct product on tuples; with ``gens`` only the subgroup they generate.

    The result carries ``factors`` so coordinate projections stay available.
    """
    factors = list(factors)

    def mul(a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(factors, a, b))

    def inv(a):
        return tuple(f.inv(x) for f, x in zip(factors, a))

    ident = tuple(f.identity for f in factors)
    label = name or "x".join(f.name or str(f.order) for f in factors)
    if gens is None:
        gens = [ident[:i] + (x,) + ident[i + 1:] for i, f in enumerate(factors) for x in f.gens]
        elems = [tuple(t) for t in _product(*(f.elements for f in factors))]
        G = FiniteGroup(elems, mul, ident, gens, label, inv)
    else:
        G = FiniteGroup.generated(list(gens), mul, ident, label, cap, inv)
    G.factors = factors
    return G
