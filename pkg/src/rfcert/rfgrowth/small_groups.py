"""Every group of order at most 24, built as cyclic extensions and deduplicated.

Each group of order n <= 24 is solvable, so it has a normal subgroup N of
prime index p. Picking g outside N, the group is determined by the
automorphism a = (conjugation by g) of N and by z = g^p in N, with
a(z) = z and a^p = conjugation by z. Elements are pairs (b, i) meaning
b * g^i and multiply by (b, i)(c, j) = (b a^i(c) z^[i+j >= p], i+j mod p).

Groups are stored as Cayley tables on 0..n-1 with identity 0.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from ..finite_groups import FiniteGroup
from ..ring import factorize

Table = list[list[int]]

# number of isomorphism classes of groups of order 1..24
KNOWN_COUNTS = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15]
MAX_ORDER = len(KNOWN_COUNTS)


def _orders(t: Table) -> list[int]:
    out = []
    for x in range(len(t)):
        k, y = 1, x
        while y != 0:
            y = t[y][x]
            k += 1
        out.append(k)
    return out


def _inverses(t: Table) -> list[int]:
    n = len(t)
    inv = [0] * n
    for a in range(n):
        for b in range(n):
            if t[a][b] == 0:
                inv[a] = b
                break
    return inv


def _closure(t: Table, gens: list[int]) -> set[int]:
    seen = {0}
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = t[a][g]
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    return seen


def _generating_set(t: Table, orders: list[int]) -> list[int]:
    n = len(t)
    chosen: list[int] = []
    span = {0}
    for x in sorted(range(n), key=lambda e: (-orders[e], e)):
        if x not in span:
            chosen.append(x)
            span = _closure(t, chosen)
            if len(span) == n:
                break
    return chosen


class TableGroup:
    """Cayley-table group with cached invariants for isomorphism testing."""

    def __init__(self, table: Table):
        self.t = table
        self.n = len(table)
        self.orders = _orders(table)
        self.inv = _inverses(table)
        self.gens = _generating_set(table, self.orders)
        n, t = self.n, table
        self.centralizer = [sum(1 for y in range(n) if t[x][y] == t[y][x]) for x in range(n)]
        self.squares = Counter(t[x][x] for x in range(n))
        self.elem_inv = [(self.orders[x], self.centralizer[x], self.squares.get(x, 0)) for x in range(n)]
        comms = {t[t[self.inv[a]][self.inv[b]]][t[a][b]] for a in range(n) for b in range(n)}
        self.derived_order = len(_closure(t, sorted(comms)))
        self.invariant = (n, tuple(sorted(Counter(self.elem_inv).items())), self.derived_order)

    def is_abelian(self) -> bool:
        return all(c == self.n for c in self.centralizer)


def _extend_map(g: TableGroup, h: TableGroup, gens: list[int], images: list[int]) -> list[int] | None:
    """The homomorphism <gens> -> h with gens[i] -> images[i], or None if inconsistent."""
    phi = [-1] * g.n
    phi[0] = 0
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for x, y in zip(gens, images):
            b = g.t[a][x]
            img = h.t[phi[a]][y]
            if phi[b] == -1:
                phi[b] = img
                frontier.append(b)
            elif phi[b] != img:
                return None
    return phi


def _search_isos(g: TableGroup, h: TableGroup, first_only: bool) -> list[list[int]]:
    if g.invariant != h.invariant:
        return []
    gens = g.gens
    cands = [[y for y in range(h.n) if h.elem_inv[y] == g.elem_inv[x]] for x in gens]
    found: list[list[int]] = []

    def rec(i: int, chosen: list[int]) -> bool:
        if i == len(gens):
            phi = _extend_map(g, h, gens, chosen)
            if phi is not None and len(set(phi)) == g.n:
                found.append(phi)
                return first_only
            return False
        for y in cands[i]:
            if y in chosen:
                continue
            chosen.append(y)
            partial = _extend_map(g, h, gens[: i + 1], chosen)
            ok = partial is not None and len(set(v for v in partial if v != -1)) == sum(
                1 for v in partial if v != -1
            )
            if ok and rec(i + 1, chosen):
                return True
            chosen.pop()
        return False

    rec(0, [])
    return found


def isomorphism(g: TableGroup, h: TableGroup) -> list[int] | None:
    hits = _search_isos(g, h, True)
    return hits[0] if hits else None


def automorphisms(g: TableGroup) -> list[tuple[int, ...]]:
    return [tuple(phi) for phi in _search_isos(g, g, False)]


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """a after b."""
    return tuple(a[x] for x in b)


def _aut_class_reps(auts: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    inv = {}
    for a in auts:
        r = [0] * len(a)
        for i, v in enumerate(a):
            r[v] = i
        inv[a] = tuple(r)
    seen: set = set()
    reps = []
    for a in auts:
        if a in seen:
            continue
        reps.append(a)
        for b in auts:
            seen.add(_compose(_compose(b, a), inv[b]))
    return reps


def _cyclic_extension(N: TableGroup, p: int, alpha: tuple[int, ...], z: int) -> Table:
    n = N.n
    t = N.t
    powers = [tuple(range(n))]
    for _ in range(p - 1):
        powers.append(_compose(alpha, powers[-1]))
    size = n * p
    table = [[0] * size for _ in range(size)]
    for i in range(p):
        ai = powers[i]
        for j in range(p):
            wrap = i + j >= p
            k = (i + j) % p
            for b in range(n):
                row = table[b + i * n]
                tb = t[b]
                for c in range(n):
                    v = tb[ai[c]]
                    if wrap:
                        v = t[v][z]
                    row[c + j * n] = v + k * n
    return table


def _valid_pair(N: TableGroup, p: int, alpha: tuple[int, ...], z: int) -> bool:
    if alpha[z] != z:
        return False
    ap = tuple(range(N.n))
    for _ in range(p):
        ap = _compose(alpha, ap)
    zi = N.inv[z]
    return all(ap[b] == N.t[N.t[z][b]][zi] for b in range(N.n))


def _cyclic_table(n: int) -> Table:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


@lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple[TableGroup, ...]:
    if n < 1 or n > MAX_ORDER:
        raise ValueError(f"orders 1..{MAX_ORDER} are supported")
    if n == 1:
        return (TableGroup([[0]]),)
    found: list[TableGroup] = []
    buckets: dict = {}

    def add(table: Table) -> None:
        g = TableGroup(table)
        for other in buckets.get(g.invariant, []):
            if isomorphism(g, other) is not None:
                return
        buckets.setdefault(g.invariant, []).append(g)
        found.append(g)

    for p in sorted(factorize(n)):
        for N in groups_of_order(n // p):
            auts = automorphisms(N)
            for alpha in _aut_class_reps(auts):
                for z in range(N.n):
                    if _valid_pair(N, p, alpha, z):
                        add(_cyclic_extension(N, p, alpha, z))
        if len(found) == KNOWN_COUNTS[n - 1]:
            break
    if len(found) != KNOWN_COUNTS[n - 1]:
        raise AssertionError(f"found {len(found)} groups of order {n}, expected {KNOWN_COUNTS[n - 1]}")
    # deterministic order: abelian first, then by invariant
    found.sort(key=lambda g: (not g.is_abelian(), g.invariant))
    return tuple(found)


def _abelian_name(g: TableGroup) -> str:
    n = g.n
    parts: list[int] = []
    for p, e in sorted(factorize(n).items()):
        # number of x with x^(p^j) = 1 is prod p^min(lambda_i, j)
        counts = [sum(1 for o in g.orders if (p**j) % o == 0) for j in range(e + 1)]
        lam: list[int] = []
        for j in range(1, e + 1):
            # parts >= j equals log_p(counts[j] / counts[j-1])
            ratio, k = counts[j] // counts[j - 1], 0
            while ratio > 1:
                ratio //= p
                k += 1
            lam.append(k)
        sizes = [sum(1 for v in lam if v >= i) for i in range(1, max(lam, default=0) + 1)]
        parts += [p**s for s in sizes]
    # combine primary parts into cyclic factors of the standard form
    if not parts:
        return "C1"
    return "x".join(f"C{c}" for c in sorted(parts))


def _dihedral_table(n: int) -> Table:
    m = n // 2
    # (r, s) with r in Z_m, s in {0,1}: index r + s*m, (r1,s1)(r2,s2) = (r1 + (-1)^s1 r2, s1+s2)
    size = n
    t = [[0] * size for _ in range(size)]
    for s1 in range(2):
        for r1 in range(m):
            for s2 in range(2):
                for r2 in range(m):
                    r = (r1 + (r2 if s1 == 0 else -r2)) % m
                    t[r1 + s1 * m][r2 + s2 * m] = r + ((s1 + s2) % 2) * m
    return t


def _dicyclic_table(n: int) -> Table:
    # Dic_m of order 4m: <a, x | a^2m = 1, x^2 = a^m, x a x^-1 = a^-1>
    m2 = n // 2
    m = m2 // 2
    t = [[0] * n for _ in range(n)]
    for s1 in range(2):
        for r1 in range(m2):
            for s2 in range(2):
                for r2 in range(m2):
                    r = r1 + (r2 if s1 == 0 else -r2)
                    s = s1 + s2
                    if s == 2:
                        r += m
                        s = 0
                    t[r1 + s1 * m2][r2 + s2 * m2] = (r % m2) + s * m2
    return t


def _perm_table(gens: list[tuple[int, ...]]) -> Table:
    G = FiniteGroup.from_permutations(gens)
    idx = G.index
    return [[idx[G.mul(a, b)] for b in G.elements] for a in G.elements]


def _named_references(n: int) -> list[tuple[str, Table]]:
    refs: list[tuple[str, Table]] = []
    if n % 2 == 0 and n >= 6:
        refs.append((f"D{n}", _dihedral_table(n)))
    if n % 4 == 0 and n >= 8:
        refs.append(("Q8" if n == 8 else f"Dic{n}", _dicyclic_table(n)))
    if n == 12:
        refs.append(("A4", _perm_table([(1, 2, 0, 3), (0, 2, 3, 1)])))
    if n == 24:
        refs.append(("S4", _perm_table([(1, 2, 3, 0), (1, 0, 2, 3)])))
        # SL(2,3) via its action on the 8 nonzero vectors of F_3^2
        vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
        vi = {v: i for i, v in enumerate(vecs)}

        def act(m):
            return tuple(vi[((v[0] * m[0][0] + v[1] * m[1][0]) % 3, (v[0] * m[0][1] + v[1] * m[1][1]) % 3)] for v in vecs)

        refs.append(("SL(2,3)", _perm_table([act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))])))
    return refs


@lru_cache(maxsize=None)
def named_groups_of_order(n: int) -> tuple[tuple[str, TableGroup], ...]:
    groups = groups_of_order(n)
    refs = [(name, TableGroup(t)) for name, t in _named_references(n)]
    out = []
    k = 0
    for g in groups:
        if g.is_abelian():
            name = _abelian_name(g)
        else:
            name = next((nm for nm, r in refs if isomorphism(r, g) is not None), None)
            if name is None:
                k += 1
                name = f"G{n}_{k}"
        out.append((name, g))
    return tuple(out)


def as_finite_group(g: TableGroup, name: str = "") -> FiniteGroup:
    G = FiniteGroup.from_table(g.t, name)
    return G


def all_small_groups(max_order: int = MAX_ORDER) -> list[tuple[str, TableGroup]]:
    out = []
    for n in range(1, max_order + 1):
        out.extend(named_groups_of_order(n))
    return out
