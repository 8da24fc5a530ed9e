"""Return sets {n > 0 : f^n(P) in Y} and their arithmetic-progression structure."""

from dataclasses import dataclass, field
from typing import Optional

from ..algebra.poly import MultiPoly
from ..heights import AffinePoint
from .orbits import forward_orbit


@dataclass
class ReturnSet:
    indices: list
    n_max: int
    progressions: list = field(default_factory=list)   # (start, difference)
    residual: list = field(default_factory=list)
    decomposed: bool = False
    partial: bool = False
    scanned_to: Optional[int] = None

    def replay(self):
        """Index set in [1, scanned_to] generated by the decomposition."""
        top = self.scanned_to if self.scanned_to is not None else self.n_max
        out = set(self.residual)
        for start, diff in self.progressions:
            out.update(range(start, top + 1, diff))
        return sorted(out)

    def as_dict(self):
        return {"indices": self.indices, "n_max": self.n_max,
                "scanned_to": self.scanned_to, "partial": self.partial,
                "decomposition": {"progressions": [list(p) for p in self.progressions],
                                  "residual": self.residual}
                if self.decomposed else "no decomposition within scan"}


def decompose_indicator(bits, min_repeats=2):
    """Eventual period of a 0/1 sequence indexed from 1.

    Returns ``(progressions, residual)`` for the smallest period q whose
    periodic tail covers at least ``min_repeats`` full periods, or ``None``.
    """
    N = len(bits)
    s = [None] + list(bits)  # 1-based
    for q in range(1, N // min_repeats + 1):
        start = 1
        for n in range(N - q, 0, -1):
            if s[n] != s[n + q]:
                start = n + 1
                break
        if N - start + 1 >= min_repeats * q:
            progs = [(r, q) for r in range(start, start + q) if s[r]]
            residual = [n for n in range(1, start) if s[n]]
            return progs, residual
    return None


def _in_variety(point, Y):
    coords = point.coords
    return all(g.evaluate(coords) == 0 for g in Y)


def return_set(f, P, Y, n_max, min_repeats=2, **orbit_options) -> ReturnSet:
    """Exact membership of ``f^n(P)``, 1 <= n <= n_max, in the zero set of ``Y``.

    ``Y`` holds polynomials in the ambient variables (affine coordinates for
    affine points, homogeneous forms for projective points).
    """
    Y = list(Y)
    rec = forward_orbit(f, P, n_max, **orbit_options)
    pts = rec.forward_points
    if Y and isinstance(pts[0], AffinePoint) and Y[0].nvars != pts[0].dimension:
        raise ValueError("subvariety polynomials do not match the point dimension")
    bits = [_in_variety(Q, Y) for Q in pts[1:]]
    indices = [n for n, b in enumerate(bits, start=1) if b]
    scanned = len(bits)
    partial = scanned < n_max
    dec = decompose_indicator(bits, min_repeats) if bits else None
    if dec is None:
        return ReturnSet(indices, n_max, partial=partial, scanned_to=scanned)
    progs, residual = dec
    return ReturnSet(indices, n_max, progs, residual, True, partial, scanned)


def parse_subvariety(strings, variables):
    return [MultiPoly.parse(s, variables) for s in strings]
