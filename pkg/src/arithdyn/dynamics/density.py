"""Search for low-degree curves (hypersurfaces) through a sample of orbit points.

An empty nullspace of the monomial evaluation matrix certifies that no
hypersurface of degree <= D contains the sample.  Full rank modulo a prime
already implies full rank over Q, so large samples are certified with
modular ranks; the exact fraction-free nullspace is used otherwise.
"""

import itertools
from dataclasses import dataclass, field
from typing import Optional

from ..algebra.linalg import ExactMatrix, nullspace, rank_mod_p
from ..algebra.modp import reduce_rational
from ..algebra.poly import MultiPoly, grlex_key
from ..errors import BadPrimeError
from ..heights import AffinePoint, ProjPoint

# primes just below 2^61 and 2^62
CERTIFICATE_PRIMES = (2305843009213693951, 4611686018427387847, 2305843009213693921)


@dataclass
class CurveWitness:
    status: str                     # curve | none | inconclusive
    degree: int
    curve: Optional[MultiPoly] = None
    certificate: dict = field(default_factory=dict)

    def as_dict(self):
        return {"status": self.status, "degree": self.degree,
                "curve": None if self.curve is None else str(self.curve),
                "certificate": self.certificate}


def monomial_exponents(nvars, D, homogeneous=False):
    """Exponent vectors of degree <= D (or == D), in decreasing graded-lex order."""
    exps = [e for e in itertools.product(range(D + 1), repeat=nvars)
            if (sum(e) == D if homogeneous else sum(e) <= D)]
    return sorted(exps, key=grlex_key, reverse=True)


def _default_variables(n, projective):
    base = ("x", "y", "z")[:n] if n <= 3 else tuple(f"x{i + 1}" for i in range(n))
    if projective:
        return base[:n - 1] + ("w",) if n <= 4 else base
    return base


def invariant_curve_search(points, D, variables=None) -> CurveWitness:
    """Find a nonzero polynomial of degree <= D vanishing on every point, or certify none.

    Projective points use forms of degree exactly D in N+1 variables.
    """
    points = list(points)
    if not points:
        return CurveWitness("inconclusive", D, certificate={"reason": "no points"})
    projective = isinstance(points[0], ProjPoint)
    coords = [P.coords for P in points]
    n = len(coords[0])
    exps = monomial_exponents(n, D, homogeneous=projective)
    if variables is None:
        variables = _default_variables(n, projective)
    if len(points) < len(exps):
        return CurveWitness("inconclusive", D, certificate={
            "reason": f"{len(points)} points < {len(exps)} monomials"})
    for p in CERTIFICATE_PRIMES:
        try:
            red = [[reduce_rational(x, p) for x in c] for c in coords]
        except BadPrimeError:
            continue
        rows = [[_mono_mod(r, e, p) for e in exps] for r in red]
        if rank_mod_p(rows, p) == len(exps):
            return CurveWitness("none", D, certificate={
                "method": "full rank modulo prime", "prime": p,
                "monomials": len(exps), "points": len(points)})
    M = ExactMatrix([[_mono(c, e) for e in exps] for c in coords])
    basis = nullspace(M)
    if not basis:
        return CurveWitness("none", D, certificate={
            "method": "exact nullspace", "monomials": len(exps), "points": len(points)})
    curve = MultiPoly(variables, dict(zip(exps, basis[0]))).canonical()
    if not all(curve.evaluate(c) == 0 for c in coords):
        raise ArithmeticError("nullspace vector does not vanish on the sample")
    return CurveWitness("curve", D, curve, {
        "method": "exact nullspace", "nullity": len(basis),
        "monomials": len(exps), "points": len(points)})


def _mono(c, e):
    v = 1
    for x, k in zip(c, e):
        if k:
            v *= x ** k
    return v


def _mono_mod(c, e, p):
    v = 1
    for x, k in zip(c, e):
        if k:
            v = v * pow(x, k, p) % p
    return v
