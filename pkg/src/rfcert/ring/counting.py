"""Prime and irreducible-polynomial bookkeeping over small prime fields."""

from __future__ import annotations

from functools import lru_cache
from itertools import count, product
from typing import Iterator

from .polys import UniPoly


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes() -> Iterator[int]:
    """2, 3, 5, 7, ... (unbounded)."""
    yield 2
    for n in count(3, 2):
        if is_prime(n):
            yield n


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**e``; raise ValueError if q is not a prime power."""
    fac = factorize(q) if q > 1 else {}
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, e),) = fac.items()
    return p, e


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("the Moebius function is defined for n >= 1")
    fac = factorize(n) if n > 1 else {}
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def gauss_irreducible_count(p: int, m: int) -> int:
    """Number of monic irreducible polynomials of degree m over F_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be positive")
    total = sum(mobius(d) * p ** (m // d) for d in divisors(m))
    assert total % m == 0
    return total // m


def _monic_of_degree(p: int, d: int) -> Iterator[UniPoly]:
    # lexicographic in (a_{d-1}, ..., a_0): the base-p integer code order
    for digits in product(range(p), repeat=d):
        yield UniPoly(list(reversed(digits)) + [1], p)


@lru_cache(maxsize=None)
def _irreducibles_cached(p: int, max_deg: int) -> tuple[UniPoly, ...]:
    found: list[UniPoly] = []
    for d in range(1, max_deg + 1):
        for cand in _monic_of_degree(p, d):
            if all(
                not w.divides(cand) for w in found if 2 * w.degree() <= d
            ):
                found.append(cand)
    return tuple(found)


def enumerate_irreducibles(p: int, max_deg: int) -> list[UniPoly]:
    """All monic irreducibles over F_p of degree <= max_deg, by (degree, lex)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if max_deg < 1:
        raise ValueError("max_deg must be at least 1")
    return list(_irreducibles_cached(p, max_deg))


def iter_irreducibles(p: int) -> Iterator[UniPoly]:
    """Monic irreducibles over F_p in (degree, lex) order, without a degree cap."""
    found: list[UniPoly] = []
    for d in count(1):
        for cand in _monic_of_degree(p, d):
            if all(not w.divides(cand) for w in found if 2 * w.degree() <= d):
                found.append(cand)
                yield cand
