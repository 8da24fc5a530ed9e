"""Degree growth, dynamical degrees and the growth constants alpha, beta.

The first dynamical degree is reported as data (roots, ratios, stability);
only an algebraically stable sequence yields an exact value.  The second
dynamical degree of a surface map equals its topological degree, computed
exactly for monomial and birational maps and estimated by fiber counting
over finite fields otherwise.
"""

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from sympy import Matrix, isprime

from .algebra.poly import MultiPoly
from .errors import InvalidParameterError, ResourceLimitError
from .maps import (AffinePolyMap, ProjRationalMap, compose, homogenize,
                   inverse_check, monomial_exponent_matrix)
from .zoo import ZooMap

DEFAULT_TERM_CAP = 10 ** 6


def as_projective(f):
    if isinstance(f, ZooMap):
        return f.projective
    if isinstance(f, AffinePolyMap):
        return homogenize(f)
    if isinstance(f, ProjRationalMap):
        return f
    raise TypeError(f"not a map: {type(f).__name__}")


def _projective_inverse(f, f_inv):
    if f_inv is not None:
        return as_projective(f_inv)
    if isinstance(f, ZooMap):
        return f.projective_inverse
    return None


# -- degree sequences --------------------------------------------------------

@dataclass
class DegreeSequence:
    map_id: str
    entries: list  # [(n, deg_1(f^n))]
    truncated: bool = False
    reason: str = ""

    @property
    def degrees(self):
        return [d for _, d in self.entries]

    def as_dict(self):
        return {"map": self.map_id, "entries": [list(e) for e in self.entries],
                "truncated": self.truncated, "reason": self.reason}


def degree_sequence(f, n_max, term_count_cap=DEFAULT_TERM_CAP, map_id=None):
    """Degrees of the saturated iterates f, f^2, ..., f^n_max.

    Stops early (``truncated=True``) once an iterate has more than
    ``term_count_cap`` monomials in total.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    F = as_projective(f)
    name = map_id or getattr(f, "name", "") or F.name or "map"
    entries = [(1, F.degree)]
    current = F
    for n in range(2, n_max + 1):
        if current.term_count * F.term_count > term_count_cap * max(1, F.degree):
            return DegreeSequence(name, entries, True,
                                  f"term_count_cap {term_count_cap} reached before n={n}")
        current = compose(F, current)
        if current.term_count > term_count_cap:
            return DegreeSequence(name, entries, True,
                                  f"iterate {n} has {current.term_count} terms "
                                  f"> term_count_cap {term_count_cap}")
        entries.append((n, current.degree))
    return DegreeSequence(name, entries)


@dataclass
class DynDegreeEstimate:
    roots: list        # deg(f^n)^(1/n)
    ratios: list       # deg(f^{n+1}) / deg(f^n), exact
    stable: bool
    delta1_exact: Optional[int] = None

    def as_dict(self):
        return {"roots": self.roots, "ratios": [str(r) for r in self.ratios],
                "stable": self.stable, "delta1_exact": self.delta1_exact}


def estimate_delta1(seq: DegreeSequence) -> DynDegreeEstimate:
    if len(seq.entries) < 2:
        raise ValueError("need at least two degrees to estimate delta_1")
    degs = dict(seq.entries)
    ns = sorted(degs)
    roots = [degs[n] ** (1.0 / n) for n in ns]
    ratios = [Fraction(degs[n + 1], degs[n]) for n in ns if n + 1 in degs]
    d = degs.get(1)
    stable = d is not None and all(degs[n] == d ** n for n in ns)
    return DynDegreeEstimate(roots, ratios, stable, d if stable else None)


# -- topological degree --------------------------------------------------------

@dataclass
class TopDegreeEstimate:
    value: int
    method: str  # exact-monomial | birational-unit | fiber-sampling
    samples: list = field(default_factory=list)  # (prime, target, count)
    discarded: int = 0
    heuristic: bool = False

    def as_dict(self):
        return {"value": self.value, "method": self.method,
                "heuristic": self.heuristic, "discarded": self.discarded,
                "samples": [[p, list(t), c] for p, t, c in self.samples]}


def _det_mod_p(rows, p):
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for i in range(c + 1, n):
            f = m[i][c] * inv % p
            if f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[c])]
    return det % p


class _ChartModP:
    """F_i(x, 1) mod p and their partial derivatives, compiled."""

    def __init__(self, F: ProjRationalMap, p):
        self.p = p
        self.n = F.dimension
        aff = [c.dehomogenize(-1) for c in F.components]
        self.comps = [c.compile() for c in aff]
        self.partials = [[c.derivative(j).compile() for j in range(self.n)]
                         for c in aff]

    def image(self, x):
        p = self.p
        vals = [f(*x) % p for f in self.comps]
        den = vals[-1]
        if den == 0:
            return None
        inv = pow(den, -1, p)
        return tuple(v * inv % p for v in vals[:-1])

    def jacobian_vanishes(self, x):
        p, n = self.p, self.n
        vals = [f(*x) % p for f in self.comps]
        den = vals[-1]
        dden = [g(*x) % p for g in self.partials[-1]]
        rows = [[(self.partials[i][j](*x) * den - vals[i] * dden[j]) % p
                 for j in range(n)] for i in range(n)]
        return _det_mod_p(rows, p) == 0


def _good_prime(F, p):
    # components are integral (canonical form); none may vanish mod p and p
    # must exceed the degree to keep the reduction separable
    if p <= F.degree:
        return False
    return all(not c or any(v % p for v in c.terms.values()) for c in F.components)


def _fiber_sampling(F, prime_count, samples_per_prime, seed, prime_range,
                    max_points, max_retries=50):
    n = F.dimension
    lo, hi = prime_range
    bezout = F.degree ** n
    if lo ** n > max_points:
        raise ResourceLimitError(
            f"exhaustive fiber count needs p^{n} >= {lo ** n} points "
            f"> cap {max_points}", "max_exhaustive_points", lo ** n)
    hi = min(hi, int(round(max_points ** (1.0 / n))) + 1)
    prime_rng = random.Random(f"{seed}:primes")
    primes = []
    tries = 0
    while len(primes) < prime_count:
        tries += 1
        if tries > max_retries + prime_count:
            raise ResourceLimitError(
                f"no good prime found in ({lo}, {hi}) after {tries - 1} tries",
                "prime_retries")
        p = _seeded_prime(prime_rng, lo, hi)
        if _good_prime(F, p) and p not in primes:
            primes.append(p)
    samples = []
    discarded = 0
    for i, p in enumerate(primes):
        rng = random.Random(f"{seed}:{i}:{p}")
        chart = _ChartModP(F, p)
        table = Counter()
        for x in itertools.product(range(p), repeat=n):
            img = chart.image(x)
            if img is not None:
                table[img] += 1
        taken = 0
        attempts = 0
        while taken < samples_per_prime and attempts < 50 * samples_per_prime:
            attempts += 1
            x = tuple(rng.randrange(p) for _ in range(n))
            img = chart.image(x)
            if img is None or chart.jacobian_vanishes(x):
                continue
            count = table[img]
            taken += 1
            if count > bezout:
                # positive-dimensional fiber through a contracted locus
                discarded += 1
                continue
            samples.append((p, img, count))
    if not samples:
        raise ResourceLimitError("every fiber sample was degenerate", "samples_per_prime")
    value = max(c for _, _, c in samples)
    return TopDegreeEstimate(value, "fiber-sampling", samples, discarded, heuristic=True)


def _seeded_prime(rng, lo, hi):
    while True:
        k = rng.randrange(lo + 1, hi)
        if isprime(k):
            return k


def topological_degree(f, f_inv=None, method="auto", prime_count=3,
                       samples_per_prime=20, seed=0, prime_range=(100, 400),
                       max_exhaustive_points=200_000):
    """Number of preimages of a generic point.

    ``method="auto"`` tries, in order: the determinant of the exponent matrix
    of a monomial map, a verified inverse (value 1), and fiber sampling.
    Fiber sampling counts preimages exhaustively over the affine chart of
    F_p^N for random primes in ``prime_range``; targets are images of random
    non-critical points and the estimate is the maximum count.
    """
    F = as_projective(f)
    if method not in ("auto", "exact-monomial", "birational-unit", "fiber-sampling"):
        raise InvalidParameterError(f"unknown method {method!r}")
    if method in ("auto", "exact-monomial"):
        M = getattr(f, "exponent_matrix", None)
        if M is None:
            M = monomial_exponent_matrix(F)
        if M is not None:
            return TopDegreeEstimate(abs(int(Matrix(M).det())), "exact-monomial")
        if method == "exact-monomial":
            raise InvalidParameterError("map is not monomial")
    if method in ("auto", "birational-unit"):
        G = _projective_inverse(f, f_inv)
        if G is not None and inverse_check(F, G):
            return TopDegreeEstimate(1, "birational-unit")
        if method == "birational-unit":
            raise InvalidParameterError("no verified inverse available")
    return _fiber_sampling(F, prime_count, samples_per_prime, seed, prime_range,
                           max_exhaustive_points)


# -- hyperbolicity ------------------------------------------------------------

@dataclass
class HyperbolicityReport:
    dimension: int
    delta1: float
    delta1_exact: Optional[int]
    delta2: float
    delta2_source: str
    hyperbolic: bool
    confidence: str  # exact | heuristic
    criterion: str

    def as_dict(self):
        return dict(self.__dict__)


def hyperbolicity_report(f, f_inv=None, n_max=3, term_count_cap=DEFAULT_TERM_CAP,
                         **topdeg_options):
    """Decide delta_1 > delta_2 (surfaces) or delta_1 != delta_2 (birational 3-folds)."""
    F = as_projective(f)
    dim = F.dimension
    if dim not in (2, 3):
        raise InvalidParameterError(f"hyperbolicity check supports dimension 2 or 3, not {dim}")
    est = estimate_delta1(degree_sequence(F, n_max, term_count_cap))
    d1 = est.delta1_exact if est.stable else est.roots[-1]
    if dim == 2:
        top = topological_degree(f, f_inv, **topdeg_options)
        exact = est.stable and not top.heuristic
        return HyperbolicityReport(
            2, float(d1), est.delta1_exact, float(top.value), top.method,
            d1 > top.value, "exact" if exact else "heuristic", "delta1 > delta2")
    G = _projective_inverse(f, f_inv)
    if G is None or not inverse_check(F, G):
        raise InvalidParameterError("dimension 3 needs a verified inverse map")
    inv_est = estimate_delta1(degree_sequence(G, n_max, term_count_cap))
    d2 = inv_est.delta1_exact if inv_est.stable else inv_est.roots[-1]
    exact = est.stable and inv_est.stable
    return HyperbolicityReport(
        3, float(d1), est.delta1_exact, float(d2), "delta1(f^-1)",
        d1 != d2 and max(d1, d2) > 1, "exact" if exact else "heuristic",
        "delta1 != delta2 = delta1(f^-1)")


# -- growth constants ------------------------------------------------------------

@dataclass(frozen=True)
class LemmaConstants:
    zeta: float
    d1: float
    d2: float
    C: float
    alpha: float
    beta: float

    def residuals(self):
        """Relative residuals of the defining identities (all should be ~0)."""
        z, d1, d2, a, b = self.zeta, self.d1, self.d2, self.alpha, self.beta
        return {
            "alpha_identity": abs(a / d1 + 1 / (a * d2) - z) / z,
            "beta_identity": abs(b / d2 + 1 / (b * d1) - z) / z,
            "alpha_d2_eq_beta_d1": abs(a * d2 - b * d1) / (a * d2),
            "alpha_lower_bound": max(0.0, (z * d1 / 2 - a) / a),
        }

    def as_dict(self):
        d = dict(self.__dict__)
        d["residuals"] = self.residuals()
        return d


def lemma_constants(zeta, d1, d2, C, tol=1e-9) -> LemmaConstants:
    """alpha = (z d1 d2 + sqrt(z^2 d1^2 d2^2 - 4 d1 d2)) / (2 d2), beta likewise over 2 d1."""
    zeta, d1, d2, C = float(zeta), float(d1), float(d2), float(C)
    if d1 <= 0 or d2 <= 0:
        raise InvalidParameterError(f"need d1 > 0 and d2 > 0, got d1={d1}, d2={d2}")
    if C <= 0:
        raise InvalidParameterError(f"need C > 0, got C={C}")
    threshold = 1 / d1 + 1 / d2
    if not zeta > threshold:
        raise InvalidParameterError(
            f"hypothesis violated: zeta = {zeta!r} is not > 1/d1 + 1/d2 = {threshold!r}")
    disc = zeta * zeta * d1 * d1 * d2 * d2 - 4 * d1 * d2
    num = zeta * d1 * d2 + math.sqrt(max(disc, 0.0))
    consts = LemmaConstants(zeta, d1, d2, C, num / (2 * d2), num / (2 * d1))
    res = consts.residuals()
    if not (consts.alpha > 1 and consts.beta > 1):
        raise ArithmeticError(f"alpha={consts.alpha}, beta={consts.beta} not both > 1")
    bad = {k: v for k, v in res.items() if v > tol}
    if bad:
        raise ArithmeticError(f"identity residuals above {tol}: {bad}")
    return consts
