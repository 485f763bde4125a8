"""Growth curves: the maximum depth (or certified quotient bound) over words of length <= n."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..words import Word, reduced_words_of_length
from .catalog import ClassFilter, QuotientCatalog, default_catalog
from .oracle import DEFAULT_BUDGET, depth


@dataclass
class OracleSource:
    rank: int = 2
    catalog: QuotientCatalog | None = None
    class_filter: ClassFilter | None = None
    budget: int = DEFAULT_BUDGET
    _cache: dict = field(default_factory=dict, repr=False)

    def value(self, w: Word) -> int | None:
        if w not in self._cache:
            if self.catalog is None:
                self.catalog = default_catalog()
            self._cache[w] = depth(self.rank, w, self.catalog, self.class_filter, self.budget).order
        return self._cache[w]


@dataclass
class PipelineSource:
    spec: object
    mode: str = "direct"
    options: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.spec.rank

    def value(self, w: Word) -> int | None:
        """Certified order bound, or None when the word is the identity."""
        from ..matgroup import is_identity_word
        from ..separate import separate_element

        if w not in self._cache:
            if is_identity_word(self.spec, w):
                self._cache[w] = None
            else:
                self._cache[w] = separate_element(self.spec, w, self.mode, **self.options).order_bound
        return self._cache[w]


def rf_curve(source, n_max: int) -> list[tuple[int, int]]:
    """Rows (n, max value over nontrivial reduced words of length <= n)."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rows = []
    best = 0
    for n in range(1, n_max + 1):
        for w in reduced_words_of_length(source.rank, n):
            v = source.value(w)
            if v is not None and v > best:
                best = v
        if best == 0:
            raise ValueError(f"every word of length <= {n} is trivial")
        rows.append((n, best))
    return rows


def curve_csv(rows: Sequence[tuple[int, int]]) -> str:
    return "n,value\n" + "".join(f"{n},{v}\n" for n, v in rows)


@dataclass
class PowerFit:
    coefficient: float
    exponent: float
    residual: float

    def __iter__(self):
        return iter((self.coefficient, self.exponent, self.residual))


def fit_polynomial(curve: Sequence[tuple[float, float]]) -> PowerFit:
    """Least squares for log(value) = log(C) + d log(n); residual is the max abs log error."""
    pts = [(float(n), float(v)) for n, v in curve]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    if any(n <= 0 or v <= 0 for n, v in pts):
        raise ValueError("n and values must be positive")
    x = np.log([n for n, _ in pts])
    y = np.log([v for _, v in pts])
    if np.ptp(x) == 0:
        raise ValueError("all n are equal")
    A = np.column_stack([np.ones_like(x), x])
    (logc, d), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.max(np.abs(A @ np.array([logc, d]) - y)))
    return PowerFit(float(np.exp(logc)), float(d), resid)
