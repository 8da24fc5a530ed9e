"""Greatest common divisors of multivariate polynomials over Q.

Monomial inputs are handled directly.  Everything else is delegated to the
sparse polynomial ring of sympy over ZZ after clearing denominators; the
result is brought back to canonical form (primitive, positive graded-lex
leading coefficient).
"""

from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .poly import MultiPoly, tuple_content


@lru_cache(maxsize=None)
def _zz_ring(nvars):
    return ring([f"x{i}" for i in range(nvars)], ZZ, grlex)[0]


def _to_zz(poly):
    R = _zz_ring(poly.nvars)
    scale = tuple_content([poly])
    q = poly.scale(Fraction(1) / scale) if scale != 1 else poly
    return R.from_dict(dict(q.terms))


def _from_zz(elem, variables):
    return MultiPoly(variables, {tuple(e): int(c) for e, c in elem.items()})


def monomial_content(poly):
    """Exponent vector of the largest monomial dividing every term."""
    it = iter(poly.terms)
    first = next(it)
    mins = list(first)
    for e in it:
        for i, x in enumerate(e):
            if x < mins[i]:
                mins[i] = x
    return tuple(mins)


def _monomial_gcd(mono_exp, poly):
    mins = monomial_content(poly)
    return MultiPoly(poly.variables,
                     {tuple(min(a, b) for a, b in zip(mono_exp, mins)): 1})


def poly_gcd(p, q):
    """Canonical gcd of two polynomials sharing a variable list.

    ``poly_gcd(p, 0)`` is the canonical (primitive) form of ``p`` and
    ``poly_gcd(0, 0)`` is zero.
    """
    p._check(q)
    if not p:
        return q.canonical()
    if not q:
        return p.canonical()
    if p.is_constant() or q.is_constant():
        return MultiPoly.one(p.variables)
    if p.is_monomial():
        return _monomial_gcd(next(iter(p.terms)), q)
    if q.is_monomial():
        return _monomial_gcd(next(iter(q.terms)), p)
    g = _to_zz(p).gcd(_to_zz(q))
    return _from_zz(g, p.variables).canonical()


def gcd_many(polys):
    """Canonical gcd of a sequence, smallest operands first with early exit at 1."""
    polys = sorted((p for p in polys if p), key=len)
    if not polys:
        raise ValueError("gcd of an empty or all-zero sequence")
    g = polys[0].canonical()
    for p in polys[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    return g


def primitive_part(poly):
    return poly.canonical()
