"""Catalog of finite target groups, sorted by order, with class tags."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from ..finite_groups import (
    FiniteGroup,
    alternating_group,
    cyclic_group,
    dihedral_group,
    perm_from_cycles,
    product_group,
    symmetric_group,
)
from .small_groups import MAX_ORDER, all_small_groups, as_finite_group

ANY = "any"
SIMPLE_LIE = "simple-lie-type"
PRODUCT_LIE = "product-of-simple-lie-type"
EXT_BOUNDED = "extension-bounded"
CLASS_NAMES = (ANY, SIMPLE_LIE, PRODUCT_LIE, EXT_BOUNDED)


class CatalogError(ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    order: int
    factory: Callable[[], FiniteGroup] = field(repr=False)
    tags: frozenset = frozenset({ANY})
    e: int | None = None  # field extension degree, Lie-type members only
    factors: tuple[str, ...] = ()
    aliases: tuple[str, ...] = ()
    _group: FiniteGroup | None = field(default=None, repr=False)

    @property
    def group(self) -> FiniteGroup:
        if self._group is None:
            g = self.factory()
            if g.order != self.order:
                raise CatalogError(f"{self.name}: built group has order {g.order}, expected {self.order}")
            g.name = self.name
            self._group = g
        return self._group

    def in_class(self, cls: "ClassFilter") -> bool:
        if cls.name == ANY:
            return True
        if cls.name == EXT_BOUNDED:
            return PRODUCT_LIE in self.tags and self.e is not None and self.e <= cls.e
        return cls.name in self.tags


@dataclass(frozen=True)
class ClassFilter:
    name: str = ANY
    e: int | None = None

    def __post_init__(self):
        if self.name not in CLASS_NAMES:
            raise CatalogError(f"unknown class {self.name!r}; expected one of {', '.join(CLASS_NAMES)}")
        if self.name == EXT_BOUNDED and (self.e is None or self.e < 1):
            raise CatalogError("extension-bounded needs e >= 1")

    @property
    def restricted(self) -> bool:
        return self.name != ANY

    def __str__(self) -> str:
        return f"{self.name}({self.e})" if self.name == EXT_BOUNDED else self.name


def parse_class(text: str | None) -> ClassFilter:
    """``any``, ``simple-lie-type``, ``product-of-simple-lie-type`` or ``extension-bounded(e)``."""
    if text is None or text == "":
        return ClassFilter()
    m = re.fullmatch(r"extension-bounded[(:=]?(\d+)\)?", text.strip())
    if m:
        return ClassFilter(EXT_BOUNDED, int(m.group(1)))
    return ClassFilter(text.strip())


class QuotientCatalog:
    """Target groups ascending by order (ties keep insertion order).

    ``complete_below[cls]`` is the largest n such that every group of order
    <= n in that class is present; it drives the exhaustiveness flag.
    """

    def __init__(self, entries: Iterable[CatalogEntry] = (), complete_below: dict[str, int] | None = None):
        self.entries: list[CatalogEntry] = []
        self.complete_below = dict(complete_below or {})
        self.extend(entries)

    def extend(self, entries: Iterable[CatalogEntry]) -> None:
        names = {e.name for e in self.entries}
        for e in entries:
            if e.name in names:
                raise CatalogError(f"duplicate catalog name {e.name!r}")
            names.add(e.name)
            self.entries.append(e)
        self.entries.sort(key=lambda e: e.order)  # stable

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name or name in e.aliases:
                return e
        raise KeyError(name)

    def filtered(self, cls: ClassFilter) -> list[CatalogEntry]:
        return [e for e in self.entries if e.in_class(cls)]

    def complete_up_to(self, cls: ClassFilter) -> int:
        return self.complete_below.get(cls.name, 0)

    def up_to(self, order: int) -> QuotientCatalog:
        return QuotientCatalog([e for e in self.entries if e.order <= order],
                               {k: min(v, order) for k, v in self.complete_below.items()})


def _psl2(q: int) -> Callable[[], FiniteGroup]:
    def build():
        from ..lietype import psl_permutation_group

        return psl_permutation_group(2, q)

    return build


def _product(a: Callable[[], FiniteGroup], b: Callable[[], FiniteGroup], name: str):
    return lambda: product_group([a(), b()], name)


def default_catalog() -> QuotientCatalog:
    entries: list[CatalogEntry] = []
    for name, tg in all_small_groups(MAX_ORDER):
        entries.append(CatalogEntry(name, tg.n, (lambda tg=tg, nm=name: as_finite_group(tg, nm))))
    small_names = {e.name for e in entries}

    lie = frozenset({ANY, SIMPLE_LIE, PRODUCT_LIE})
    a5 = lambda: alternating_group(5)  # noqa: E731
    l7 = _psl2(7)
    entries += [
        CatalogEntry("A5", 60, a5, lie, 1, ("A5",), ("PSL2(4)", "PSL2(5)")),
        CatalogEntry("S5", 120, lambda: symmetric_group(5)),
        CatalogEntry("PSL2(7)", 168, l7, lie, 1, ("PSL2(7)",), ("PSL3(2)",)),
        CatalogEntry("A6", 360, lambda: alternating_group(6), lie, 2, ("A6",), ("PSL2(9)",)),
        CatalogEntry("PSL2(8)", 504, _psl2(8), lie, 3, ("PSL2(8)",)),
        CatalogEntry("PSL2(11)", 660, _psl2(11), lie, 1, ("PSL2(11)",)),
        CatalogEntry("S6", 720, lambda: symmetric_group(6)),
        CatalogEntry("PSL2(13)", 1092, _psl2(13), lie, 1, ("PSL2(13)",)),
        CatalogEntry("A7", 2520, lambda: alternating_group(7)),
        CatalogEntry("A5xA5", 3600, _product(a5, a5, "A5xA5"), frozenset({ANY, PRODUCT_LIE}), 1, ("A5", "A5")),
        CatalogEntry("S7", 5040, lambda: symmetric_group(7)),
        CatalogEntry("A5xPSL2(7)", 10080, _product(a5, l7, "A5xPSL2(7)"),
                     frozenset({ANY, PRODUCT_LIE}), 1, ("A5", "PSL2(7)")),
    ]
    for n in range(25, 49):
        if f"C{n}" not in small_names:
            entries.append(CatalogEntry(f"C{n}", n, (lambda n=n: cyclic_group(n))))
        if n % 2 == 0:
            entries.append(CatalogEntry(f"D{n}", n, (lambda n=n: dihedral_group(n))))
    # every group of order <= 24 is present; every simple group of Lie type
    # of order < 2448 (the next one is PSL2(17)) is present, and the smallest
    # product of two of them is A5xA5 of order 3600
    complete = {ANY: MAX_ORDER, SIMPLE_LIE: 2447, PRODUCT_LIE: 2447, EXT_BOUNDED: 2447}
    return QuotientCatalog(entries, complete)


_GROUP_LINE = re.compile(r"^group\s+(\S+)\s*(.*)$")


def parse_catalog_file(text: str) -> list[CatalogEntry]:
    """Entries from lines ``group NAME [degree=n] [tags=a,b] [e=k] gens=(1,2,3)(4,5);(1,2)``.

    Points are 1-based; ``#`` starts a comment. Orders are computed by closure.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _GROUP_LINE.match(line)
        if not m:
            raise CatalogError(f"line {lineno}: expected 'group NAME ...'")
        name, rest = m.group(1), m.group(2)
        opts: dict[str, str] = {}
        for tok in re.finditer(r"(\w+)=(\S+)", rest):
            opts[tok.group(1)] = tok.group(2)
        if "gens" not in opts:
            raise CatalogError(f"line {lineno}: missing gens=")
        cyc_lists = []
        top = 0
        for part in opts["gens"].split(";"):
            cycles = [tuple(int(v) for v in c.split(",") if v.strip()) for c in re.findall(r"\(([^)]*)\)", part)]
            if not cycles and part.strip() not in ("()", ""):
                raise CatalogError(f"line {lineno}: bad generator {part!r}")
            cyc_lists.append(cycles)
            top = max([top] + [max(c) for c in cycles if c])
        degree = int(opts.get("degree", top or 1))
        if top > degree:
            raise CatalogError(f"line {lineno}: point {top} exceeds degree {degree}")
        gens = [perm_from_cycles(degree, cycles) for cycles in cyc_lists]
        tags = {ANY}
        if "tags" in opts:
            for t in opts["tags"].split(","):
                if t not in CLASS_NAMES:
                    raise CatalogError(f"line {lineno}: unknown tag {t!r}")
                tags.add(t)
        if SIMPLE_LIE in tags:
            tags.add(PRODUCT_LIE)
        e = int(opts["e"]) if "e" in opts else None
        G = FiniteGroup.from_permutations(gens, name)
        out.append(CatalogEntry(name, G.order, (lambda G=G: G), frozenset(tags), e, _group=G))
    return out


def load_catalog_file(path: str | Path, base: QuotientCatalog | None = None) -> QuotientCatalog:
    """Extend ``base`` (default catalog if None) with the groups listed in ``path``."""
    cat = base if base is not None else default_catalog()
    cat.extend(parse_catalog_file(Path(path).read_text()))
    return cat
