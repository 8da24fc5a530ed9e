"""Forward and full orbits by exact point iteration, and periodicity detection."""

from dataclasses import dataclass, field
from typing import Optional

from ..errors import InvalidParameterError
from ..heights import AffinePoint, ProjPoint, weil_height
from ..maps import (INDETERMINATE, AffinePolyMap, ProjRationalMap,
                    evaluate_affine, evaluate_proj, inverse_check)
from ..zoo import ZooMap

DEFAULT_DIGIT_CAP = 10 ** 6
_LOG2_10 = 3.321928094887362


@dataclass
class OrbitRecord:
    """Points ``f^i(P)`` (i in ``indices``) with their heights.

    For a full orbit ``indices`` runs from ``-n`` to ``n``; ``points`` and
    ``heights`` are parallel to it.
    """

    map_id: str
    start: object
    points: list
    heights: list
    direction: str = "forward"
    indices: list = field(default_factory=list)
    indeterminacy_index: Optional[int] = None
    truncated: bool = False

    def __post_init__(self):
        if not self.indices:
            self.indices = list(range(len(self.points)))

    def __len__(self):
        return len(self.points)

    @property
    def forward_points(self):
        return [p for i, p in zip(self.indices, self.points) if i >= 0]

    @property
    def forward_heights(self):
        return [h for i, h in zip(self.indices, self.heights) if i >= 0]

    def drop(self, k):
        """The forward record of ``f^k(P)`` obtained by discarding k points."""
        pts = self.forward_points[k:]
        hs = self.forward_heights[k:]
        return OrbitRecord(self.map_id, pts[0], pts, hs, "forward",
                           indeterminacy_index=None if self.indeterminacy_index is None
                           else self.indeterminacy_index - k,
                           truncated=self.truncated)

    def as_dict(self):
        return {
            "map": self.map_id, "start": str(self.start), "direction": self.direction,
            "indeterminacy_index": self.indeterminacy_index, "truncated": self.truncated,
            "rows": [{"n": i, "point": str(p), "max_coordinate": h.max_coordinate,
                      "log_height": float(f"{h.log:.12g}")}
                     for i, p, h in zip(self.indices, self.points, self.heights)],
        }


def _stepper(f, P):
    """Pick the evaluation engine matching the map and point types."""
    if isinstance(f, ZooMap):
        if isinstance(P, AffinePoint) and f.forward is not None:
            return f.forward, (lambda Q: evaluate_affine(f.forward, Q)), f.name
        f, name = f.projective, f.name
    else:
        name = f.name or type(f).__name__
    if isinstance(f, AffinePolyMap):
        return f, (lambda Q: evaluate_affine(f, Q)), name
    if isinstance(f, ProjRationalMap):
        return f, (lambda Q: evaluate_proj(f, Q)), name
    raise TypeError(f"not a map: {type(f).__name__}")


def _digits(h):
    return h.max_coordinate.bit_length() / _LOG2_10


def _coerce_point(f, P):
    if isinstance(f, AffinePolyMap) and isinstance(P, ProjPoint):
        Q = P.affine()
        if Q is None:
            raise InvalidParameterError(f"{P} is at infinity; the map is affine")
        return Q
    if isinstance(f, ProjRationalMap) and isinstance(P, AffinePoint):
        return P.closure()
    if isinstance(P, (tuple, list)):
        return AffinePoint(tuple(P)) if isinstance(f, AffinePolyMap) else None
    return P


def _iterate_points(f, P, n_max, digit_cap):
    g, step, name = _stepper(f, P)
    P = _coerce_point(g, P)
    points = [P]
    heights = [weil_height(P)]
    hit = None
    truncated = False
    for n in range(1, n_max + 1):
        if _digits(heights[-1]) > digit_cap:
            truncated = True
            break
        Q = step(points[-1])
        if Q is INDETERMINATE:
            hit = n - 1
            break
        points.append(Q)
        heights.append(weil_height(Q))
    return name, points, heights, hit, truncated


def forward_orbit(f, P, n_max, digit_cap=DEFAULT_DIGIT_CAP) -> OrbitRecord:
    """``P, f(P), ..., f^n_max(P)`` by point evaluation (never map composition).

    Iteration stops at the first point of the indeterminacy locus, recorded as
    ``indeterminacy_index``, or once a coordinate exceeds ``digit_cap``
    decimal digits (``truncated``).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    name, pts, hs, hit, trunc = _iterate_points(f, P, n_max, digit_cap)
    return OrbitRecord(name, pts[0], pts, hs, "forward", indeterminacy_index=hit,
                       truncated=trunc)


def backward_orbit(f_inv, P, n_max, digit_cap=DEFAULT_DIGIT_CAP) -> OrbitRecord:
    name, pts, hs, hit, trunc = _iterate_points(f_inv, P, n_max, digit_cap)
    return OrbitRecord(name, pts[0], pts, hs, "backward",
                       indices=[-i for i in range(len(pts))],
                       indeterminacy_index=None if hit is None else -hit,
                       truncated=trunc)


def full_orbit(f, f_inv, P, n_max, digit_cap=DEFAULT_DIGIT_CAP) -> OrbitRecord:
    """Orbit indexed ``-n_max .. n_max`` using a verified inverse."""
    if isinstance(f, ZooMap):
        if f_inv is None:
            f_inv = f.inverse if f.inverse is not None and isinstance(P, AffinePoint) \
                else f.projective_inverse
        f = f.forward if f.forward is not None and isinstance(P, AffinePoint) else f.projective
    if f_inv is None or not inverse_check(f, f_inv):
        raise InvalidParameterError("full_orbit needs an inverse passing inverse_check")
    fw = forward_orbit(f, P, n_max, digit_cap)
    bw = backward_orbit(f_inv, P, n_max, digit_cap)
    back = list(zip(bw.indices, bw.points, bw.heights))[1:][::-1]
    fwd = list(zip(fw.indices, fw.points, fw.heights))
    rows = back + fwd
    hit = fw.indeterminacy_index if fw.indeterminacy_index is not None \
        else bw.indeterminacy_index
    return OrbitRecord(fw.map_id, P, [r[1] for r in rows], [r[2] for r in rows], "full",
                       indices=[r[0] for r in rows], indeterminacy_index=hit,
                       truncated=fw.truncated or bw.truncated)


@dataclass(frozen=True)
class Periodicity:
    kind: str  # periodic | preperiodic | aperiodic-within-scan
    period: Optional[int] = None
    preperiod: Optional[int] = None

    @property
    def is_preperiodic(self):
        return self.kind != "aperiodic-within-scan"

    def as_dict(self):
        return {"kind": self.kind, "period": self.period, "preperiod": self.preperiod}


def detect_periodicity(rec: OrbitRecord) -> Periodicity:
    """Minimal period and preperiod of the first repeat in the forward part."""
    seen = {}
    for n, Q in enumerate(rec.forward_points):
        if Q in seen:
            m = seen[Q]
            return Periodicity("periodic" if m == 0 else "preperiodic", n - m, m)
        seen[Q] = n
    return Periodicity("aperiodic-within-scan")
