"""Exhaustive search for periodic points of bounded height.

Every rational point of height <= B is pushed through at most T steps of the
map on primitive integer vectors.  A point is periodic when its orbit returns
exactly to the start.  Leaving the height range ``2B + 1`` is only a pruning
heuristic: such points are reported as escaping, never as non-periodic
with certainty.
"""

import math
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from typing import Optional

from ..algebra.poly import MultiPoly, canonical_tuple
from ..errors import InvalidParameterError, ResourceLimitError
from ..heights import (AffinePoint, Height, ProjPoint, count_estimate,
                       max_coordinate_for_bound, primitive_vectors)
from ..maps import AffinePolyMap, ProjRationalMap, homogenize
from ..zoo import ZooMap

CLASSES = ("periodic", "preperiodic", "escaping", "indeterminate", "unresolved")
DEFAULT_MAX_POINTS = 5 * 10 ** 6
_CHUNK = 20000


@dataclass
class SurveyReport:
    space: str
    height_bound: float
    period_bound: int
    max_coordinate: int          # enumeration range: |coords| <= this
    escape_coordinate: int       # pruning threshold
    enumerated: int
    counts: dict
    periodic: list               # (point, period) in enumeration order
    max_periodic_height: Optional[Height]
    pruned: bool = True
    notes: list = field(default_factory=list)

    @property
    def periodic_points(self):
        return [P for P, _ in self.periodic]

    def as_dict(self):
        h = self.max_periodic_height
        return {
            "space": self.space, "height_bound": self.height_bound,
            "period_bound": self.period_bound, "max_coordinate": self.max_coordinate,
            "escape_coordinate": self.escape_coordinate, "enumerated": self.enumerated,
            "counts": dict(self.counts), "pruned": self.pruned,
            "periodic": [{"point": str(P), "period": q} for P, q in self.periodic],
            "max_periodic_height": None if h is None else
            {"max_coordinate": h.max_coordinate, "log": float(f"{h.log:.12g}")},
            "notes": list(self.notes),
        }


def _survey_map(f):
    """(projective map, space) used for enumeration."""
    if isinstance(f, ZooMap):
        return f.projective, ("affine" if f.forward is not None else "projective")
    if isinstance(f, AffinePolyMap):
        return homogenize(f), "affine"
    if isinstance(f, ProjRationalMap):
        return f, "projective"
    raise TypeError(f"not a map: {type(f).__name__}")


def _canon(v):
    g = 0
    for x in sorted((abs(x) for x in v if x)):
        g = math.gcd(g, x)
        if g == 1:
            break
    if g > 1:
        v = tuple(x // g for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _compile_integral(strings, variables):
    comps = canonical_tuple([MultiPoly.parse(s, variables) for s in strings])
    return tuple(c.compile() for c in comps)


def _classify(funcs, v0, T, escape, prune):
    """Class name and period (or None) of the start vector ``v0``."""
    seen = {v0}
    v = v0
    escaped = False
    for k in range(1, T + 1):
        v = tuple(F(*v) for F in funcs)
        if not any(v):
            return "indeterminate", None
        v = _canon(v)
        if v == v0:
            return "periodic", k
        if v in seen:
            return "preperiodic", None
        seen.add(v)
        if max(map(abs, v)) > escape:
            escaped = True
            if prune:
                return "escaping", None
    return ("escaping" if escaped else "unresolved"), None


def _survey_chunk(args):
    strings, variables, vectors, T, escape, prune = args
    funcs = _compile_integral(strings, variables)
    counts = dict.fromkeys(CLASSES, 0)
    periodic = []
    for v in vectors:
        cls, q = _classify(funcs, _canon(v), T, escape, prune)
        counts[cls] += 1
        if q is not None:
            periodic.append((v, q))
    return counts, periodic


def _chunks(iterable, size):
    it = iter(iterable)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


def periodic_point_survey(f, f_inv=None, height_bound=0.0, period_bound=1,
                          max_points=DEFAULT_MAX_POINTS, prune_escapes=True,
                          workers=1) -> SurveyReport:
    """Classify every rational point of height <= ``height_bound``.

    Parameters
    ----------
    f : ZooMap, AffinePolyMap or ProjRationalMap
        Affine maps are surveyed on affine points, projective maps on
        projective points.
    f_inv : optional
        Accepted for interface symmetry; the forward scan alone decides
        periodicity.
    max_points : int
        Refuse (``ResourceLimitError``) when the enumeration estimate exceeds
        this count.
    workers : int
        Process count; results are aggregated in enumeration order so they do
        not depend on scheduling.
    """
    if height_bound < 0:
        raise InvalidParameterError("height bound must be >= 0")
    if period_bound < 1:
        raise InvalidParameterError("period bound must be >= 1")
    F, space = _survey_map(f)
    dim = F.dimension
    M = max_coordinate_for_bound(height_bound)
    estimate = count_estimate(dim, M, space)
    if estimate > max_points:
        raise ResourceLimitError(
            f"enumeration of about {estimate} points exceeds max_points={max_points}",
            "max_points", estimate)
    escape = max_coordinate_for_bound(2 * height_bound + 1)
    strings, variables = F.strings(), F.variables
    jobs = ((strings, variables, block, period_bound, escape, prune_escapes)
            for block in _chunks(primitive_vectors(dim, M, space), _CHUNK))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_survey_chunk, jobs))
    else:
        results = [_survey_chunk(j) for j in jobs]
    counts = dict.fromkeys(CLASSES, 0)
    periodic = []
    for c, per in results:
        for k in CLASSES:
            counts[k] += c[k]
        periodic.extend(per)
    points = [(_to_point(v, space), q) for v, q in periodic]
    heights = [Height(max(map(abs, v)), math.log(max(map(abs, v))))
               for v, _ in periodic]
    top = max(heights, key=lambda h: h.max_coordinate) if heights else None
    notes = ["escaping = left height 2B+1 within the scan (pruning heuristic)",
             "unresolved = no return and no escape within the period bound"]
    return SurveyReport(space, height_bound, period_bound, M, escape,
                        sum(counts.values()), counts, points, top,
                        prune_escapes, notes)


def _to_point(v, space):
    if space == "projective":
        return ProjPoint(v)
    c = v[-1]
    return AffinePoint(tuple(Fraction(x, c) for x in v[:-1]))
