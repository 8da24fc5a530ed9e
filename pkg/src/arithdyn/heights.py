"""Weil heights on P^N(Q) and A^N(Q), and Northcott enumeration.

Affine points are measured through their projective closure
``(r_1, ..., r_N) -> [r_1 : ... : r_N : 1]``, so there is a single height
function.  Heights carry the exact maximal coordinate next to its logarithm;
bound checks compare integers, never floats.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .errors import ParseError
from .algebra.poly import as_rational


@dataclass(frozen=True)
class ProjPoint:
    """Point ``[a_0 : ... : a_N]`` with coprime integers, first nonzero positive."""

    coords: tuple

    def __post_init__(self):
        c = self.coords
        if not c or not any(c):
            raise ValueError("projective point needs a nonzero coordinate")
        if _gcd_small_first(c) != 1 or next(x for x in c if x) < 0:
            raise ValueError(f"{c} is not in canonical form; use normalize()")

    @property
    def dimension(self):
        return len(self.coords) - 1

    def __str__(self):
        return "[" + ":".join(str(x) for x in self.coords) + "]"

    def affine(self, i=-1):
        """Dehomogenize at coordinate ``i``; ``None`` if it vanishes."""
        c = self.coords
        i %= len(c)
        if c[i] == 0:
            return None
        return AffinePoint(tuple(as_rational(Fraction(x, c[i]))
                                 for j, x in enumerate(c) if j != i))


@dataclass(frozen=True)
class AffinePoint:
    """Point of A^N(Q) as a tuple of exact rationals."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords",
                           tuple(as_rational(x) for x in self.coords))

    @property
    def dimension(self):
        return len(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.coords) + ")"

    def closure(self):
        return normalize(self.coords + (1,))


class Height(NamedTuple):
    """Exact maximal coordinate together with its natural logarithm."""

    max_coordinate: int
    log: float

    def __str__(self):
        return f"log({self.max_coordinate}) = {self.log:.12g}"


def _gcd_small_first(ints):
    # smallest entries first: a unit coordinate short-circuits the gcd of
    # huge ones
    g = 0
    for x in sorted(ints, key=lambda v: abs(v).bit_length()):
        g = math.gcd(g, x)
        if g == 1:
            return 1
    return g


def _primitive(ints):
    g = _gcd_small_first(ints)
    return list(ints) if g == 1 else [x // g for x in ints]


def normalize(raw) -> ProjPoint:
    """Canonical projective point through the rational vector ``raw``."""
    vals = [as_rational(x) for x in raw]
    if not any(vals):
        raise ValueError("all-zero vector is not a projective point")
    dens = [x.denominator for x in vals if isinstance(x, Fraction)]
    m = math.lcm(*dens) if dens else 1
    ints = [int(x * m) if isinstance(x, Fraction) else x * m for x in vals]
    ints = _primitive(ints)
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return ProjPoint(tuple(ints))


def _as_proj(P):
    if isinstance(P, ProjPoint):
        return P
    if isinstance(P, AffinePoint):
        return P.closure()
    raise TypeError(f"expected ProjPoint or AffinePoint, got {type(P).__name__}")


def weil_height(P) -> Height:
    """``log max |a_j|`` for ``P = [a_0 : ... : a_N]`` in coprime integers."""
    P = _as_proj(P)
    m = max(abs(x) for x in P.coords)
    return Height(m, math.log(m))


def h_plus(P) -> float:
    return max(weil_height(P).log, 1.0)


def max_coordinate_for_bound(bound) -> int:
    """Largest integer M with ``log M <= bound`` (0 when the bound is negative)."""
    if bound < 0:
        return 0
    m = int(math.floor(math.exp(bound)))
    while m >= 1 and math.log(m) > bound:
        m -= 1
    while math.log(m + 1) <= bound:
        m += 1
    return m


def _vectors_with_max(length, m, sign_canonical):
    """Integer vectors in [-m, m]^length with max |entry| = m, lexicographic.

    With ``sign_canonical`` the first nonzero entry is forced positive.
    """
    vec = [0] * length

    def rec(i, hit, leading_zero):
        if i == length - 1:
            lo = 0 if (sign_canonical and leading_zero) else -m
            if hit:
                for v in range(lo, m + 1):
                    vec[i] = v
                    yield tuple(vec)
            else:
                if lo == -m:
                    vec[i] = -m
                    yield tuple(vec)
                vec[i] = m
                yield tuple(vec)
            return
        lo = 0 if (sign_canonical and leading_zero) else -m
        for v in range(lo, m + 1):
            vec[i] = v
            yield from rec(i + 1, hit or abs(v) == m, leading_zero and v == 0)

    if length == 0 or m == 0:
        return
    yield from rec(0, False, True)


def primitive_vectors(dimension, max_coordinate, space="projective"):
    """Integer representatives of the points of height <= log(max_coordinate).

    Projective: canonical ``(a_0..a_N)``.  Affine: ``(a_1..a_N, c)`` with
    ``c > 0`` standing for ``(a_1/c, ..., a_N/c)``.
    """
    gcd = math.gcd
    for m in range(1, max_coordinate + 1):
        if space == "projective":
            for v in _vectors_with_max(dimension + 1, m, True):
                if gcd(*v) == 1:
                    yield v
        elif space == "affine":
            for v in _affine_with_max(dimension, m):
                if gcd(*v) == 1:
                    yield v
        else:
            raise ValueError(f"space must be 'affine' or 'projective', not {space!r}")


def _affine_with_max(dimension, m):
    """Vectors ``(a_1..a_N, c)`` with ``1 <= c`` and max |entry| = m, lexicographic."""
    vec = [0] * dimension

    def rec(i, hit):
        if i == dimension:
            if hit:
                for c in range(1, m + 1):
                    yield tuple(vec) + (c,)
            else:
                yield tuple(vec) + (m,)
            return
        for v in range(-m, m + 1):
            vec[i] = v
            yield from rec(i + 1, hit or abs(v) == m)

    yield from rec(0, False)


def enumerate_bounded_height(dimension, bound, space="projective") -> Iterator:
    """Every rational point of height at most ``bound``, each exactly once.

    Ordered by exact maximal coordinate, then lexicographically on the integer
    representative.  Affine points come from projective points with nonzero
    last coordinate.
    """
    M = max_coordinate_for_bound(bound)
    for v in primitive_vectors(dimension, M, space):
        if space == "projective":
            yield ProjPoint(v)
        else:
            c = v[-1]
            yield AffinePoint(tuple(Fraction(x, c) for x in v[:-1]))


def count_estimate(dimension, max_coordinate, space="projective") -> int:
    """Rough size of the enumeration (used for refusing oversized surveys)."""
    M = max_coordinate
    if space == "projective":
        return int((2 * M + 1) ** (dimension + 1) / 2)
    return int((2 * M + 1) ** dimension * M)


# -- serialization ---------------------------------------------------------

_PROJ_RE = re.compile(r"^\s*\[(.*)\]\s*$")
_AFF_RE = re.compile(r"^\s*\((.*)\)\s*$")


def parse_point(text):
    """Parse ``[a0:a1:...]`` (projective) or ``(r1, ..., rN)`` (affine)."""
    m = _PROJ_RE.match(text)
    try:
        if m:
            parts = [p.strip() for p in m.group(1).split(":")]
            return normalize([Fraction(p) for p in parts])
        m = _AFF_RE.match(text)
        if m:
            parts = [p.strip() for p in m.group(1).split(",")]
            return AffinePoint(tuple(Fraction(p) for p in parts))
        if text.strip():
            return AffinePoint((Fraction(text.strip()),))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {text!r}: {exc}") from None
    raise ParseError(f"bad point {text!r}")


def format_point(P):
    return str(P)
