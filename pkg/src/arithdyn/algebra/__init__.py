"""Exact arithmetic foundation: rationals, sparse polynomials, linear algebra, F_p."""

from fractions import Fraction as ExactRational

from .gcd import gcd_many, monomial_content, poly_gcd
from .linalg import ExactMatrix, nullspace, rank, rank_mod_p
from .modp import PolyModP, is_good_prime, poly_mod_p, reduce_rational
from .parse import parse_poly
from .poly import (NEG_INF, MultiPoly, as_rational, canonical_tuple,
                   format_poly, grlex_key, tuple_content)

__all__ = [
    "ExactRational", "MultiPoly", "NEG_INF", "ExactMatrix", "PolyModP",
    "as_rational", "canonical_tuple", "format_poly", "gcd_many", "grlex_key",
    "is_good_prime", "monomial_content", "nullspace", "parse_poly", "poly_gcd",
    "poly_mod_p", "rank", "rank_mod_p", "reduce_rational", "tuple_content",
]
