"""Exact rings: integers, residues, sparse polynomials, localizations, finite fields."""

from .counting import (
    enumerate_irreducibles,
    factorize,
    gauss_irreducible_count,
    is_prime,
    iter_irreducibles,
    mobius,
    prime_power,
    primes,
)
from .finite_field import FiniteField, gf
from .localization import DenominatorSet, Localization, LocalizedElem, polynomial_ring
from .parse import ParseError, parse_localized, parse_poly, parse_unipoly
from .polys import MultiPoly, StructureError, UniPoly, poly_arith


def substitute_powers(f: MultiPoly, n_vec) -> UniPoly:
    return f.substitute_powers(n_vec)


def unipoly_eval_mod(h: UniPoly, m: int, p: int) -> int:
    """``h(m) mod p`` with reduction at every Horner step."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if h.char and h.char != p:
        raise StructureError("polynomial characteristic differs from the modulus")
    return h.eval_mod(m, p)


__all__ = [
    "DenominatorSet",
    "FiniteField",
    "Localization",
    "LocalizedElem",
    "MultiPoly",
    "ParseError",
    "StructureError",
    "UniPoly",
    "enumerate_irreducibles",
    "factorize",
    "gauss_irreducible_count",
    "gf",
    "is_prime",
    "iter_irreducibles",
    "mobius",
    "parse_localized",
    "parse_poly",
    "parse_unipoly",
    "poly_arith",
    "polynomial_ring",
    "prime_power",
    "primes",
    "substitute_powers",
    "unipoly_eval_mod",
]
