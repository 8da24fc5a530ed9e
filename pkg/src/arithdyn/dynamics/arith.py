"""Arithmetic-degree estimates and the alpha-weighted height sequences."""

import math
from dataclasses import dataclass, field
from typing import Optional

from ..degrees import LemmaConstants
from .orbits import OrbitRecord, detect_periodicity, forward_orbit


@dataclass
class TailReport:
    """Extreme (min or max) root and ratio over the tail window."""

    root_indices: list
    ratio_indices: list
    root: float
    ratio: Optional[float]

    def as_dict(self):
        return dict(self.__dict__)


@dataclass
class ArithDegreeEstimate:
    """``roots[n] = h+(f^n P)^(1/n)`` and ``ratios[n] = h(f^(n+1) P) / h(f^n P)``."""

    roots: dict
    ratios: dict
    tail_window: int
    lower_report: TailReport
    upper_report: TailReport
    alpha_exact: Optional[int] = None

    def as_dict(self):
        return {
            "roots": {str(k): v for k, v in self.roots.items()},
            "ratios": {str(k): v for k, v in self.ratios.items()},
            "tail_window": self.tail_window,
            "lower": self.lower_report.as_dict(), "upper": self.upper_report.as_dict(),
            "alpha_exact": self.alpha_exact,
        }


def _log(h):
    return h.log if hasattr(h, "log") else float(h)


def default_tail_window(scan):
    return max(1, math.ceil(scan / 3))


def arith_roots_and_ratios(heights):
    """Root and ratio estimators from a list of heights ``h_0, h_1, ...``."""
    logs = [_log(h) for h in heights]
    roots = {n: max(logs[n], 1.0) ** (1.0 / n) for n in range(1, len(logs))}
    ratios = {n: logs[n + 1] / logs[n] for n in range(len(logs) - 1) if logs[n] > 0}
    return roots, ratios


def estimate_arith_degree(rec: OrbitRecord, tail_window=None) -> ArithDegreeEstimate:
    """Tail-window lower/upper reports of the root and ratio estimators."""
    if rec.indeterminacy_index is not None:
        raise ValueError("orbit hits the indeterminacy locus")
    heights = rec.forward_heights
    scan = len(heights) - 1
    w = default_tail_window(scan) if tail_window is None else tail_window
    if len(heights) < w + 2:
        raise ValueError(f"orbit too short: {len(heights)} points for tail window {w}")
    roots, ratios = arith_roots_and_ratios(heights)
    root_idx = list(range(scan - w + 1, scan + 1))
    ratio_idx = [n for n in range(scan - w, scan) if n in ratios]
    rv = [roots[n] for n in root_idx]
    qv = [ratios[n] for n in ratio_idx]
    lower = TailReport(root_idx, ratio_idx, min(rv), min(qv) if qv else None)
    upper = TailReport(root_idx, ratio_idx, max(rv), max(qv) if qv else None)
    per = detect_periodicity(rec)
    return ArithDegreeEstimate(roots, ratios, w, lower, upper,
                               1 if per.is_preperiodic else None)


@dataclass
class PowerConsistency:
    n: int
    scan: int
    ratio_f: float          # mean tail ratio under f
    ratio_fn: float         # mean tail ratio under f^n
    root_f: float
    root_fn: float
    ratio_discrepancy: float
    root_discrepancy: float
    exact_one: bool = False

    def as_dict(self):
        return dict(self.__dict__)


def _mean(xs):
    return sum(xs) / len(xs)


def power_consistency_check(f, P, n, scan, tail_window=None, **orbit_options):
    """Compare estimates under ``f^n`` (every n-th orbit point) with the n-th power under f.

    ``scan`` counts steps of f; the orbit under ``f^n`` is ``f^(nk)(P)`` for
    ``nk <= scan``.
    """
    if n < 2:
        raise ValueError("power check needs n >= 2")
    rec = forward_orbit(f, P, scan, **orbit_options)
    if detect_periodicity(rec).is_preperiodic:
        return PowerConsistency(n, scan, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, exact_one=True)
    hs = rec.forward_heights
    sub = hs[::n]
    est_f = estimate_arith_degree(rec, tail_window)
    roots_n, ratios_n = arith_roots_and_ratios(sub)
    m = len(sub) - 1
    w = default_tail_window(m)
    tail_ratios = [ratios_n[k] for k in range(m - w, m) if k in ratios_n]
    tail_roots = [roots_n[k] for k in range(m - w + 1, m + 1)]
    f_ratios = [est_f.ratios[k] for k in est_f.lower_report.ratio_indices]
    f_roots = [est_f.roots[k] for k in est_f.lower_report.root_indices]
    r_f = _mean(f_ratios)
    r_fn = _mean(tail_ratios)
    q_f = _mean(f_roots)
    q_fn = _mean(tail_roots)
    return PowerConsistency(n, scan, r_f, r_fn, q_f, q_fn,
                            abs(r_fn - r_f ** n) / r_f ** n,
                            abs(q_fn - q_f ** n) / q_f ** n)


@dataclass
class EllSequence:
    constants: LemmaConstants
    flavor: str
    values: list                 # l_n (one-sided) or l+_n, n >= 1 (two-sided)
    flags: list                  # l_{n+1} >= alpha * l_n
    values_minus: list = field(default_factory=list)
    flags_minus: list = field(default_factory=list)   # l-_{n+1} >= beta * l-_n
    hypothesis_flags: list = field(default_factory=list)
    ell_inf_proxy: Optional[float] = None

    @property
    def all_flags(self):
        return all(self.flags) and all(self.flags_minus)

    def as_dict(self):
        return {"constants": self.constants.as_dict(), "flavor": self.flavor,
                "values": self.values, "flags": self.flags,
                "values_minus": self.values_minus, "flags_minus": self.flags_minus,
                "hypothesis_flags": self.hypothesis_flags,
                "ell_inf_proxy": self.ell_inf_proxy,
                "ell_inf_note": "finite-scan proxy: min over tail of h_n / alpha^n"}


def ell_sequence(heights, consts: LemmaConstants, flavor="one-sided") -> EllSequence:
    """alpha-weighted combinations of consecutive heights and their growth flags.

    one-sided: ``l_n = h_{n+1}/d1 - h_n/(alpha d2) - C/(alpha-1)`` for a
    forward orbit ``h_0, h_1, ...``.

    two-sided: ``heights`` is a full orbit ``h_{-m} .. h_m``;
    ``l+_n = h_n/d1 - h_{n-1}/(alpha d2) - C/(alpha-1)`` and
    ``l-_n = h_{-n}/d2 - h_{-n+1}/(beta d1) - C/(beta-1)`` for n = 1..m.
    """
    hs = [_log(h) for h in heights]
    a, b = consts.alpha, consts.beta
    d1, d2, C, z = consts.d1, consts.d2, consts.C, consts.zeta
    if flavor == "one-sided":
        vals = [hs[n + 1] / d1 - hs[n] / (a * d2) - C / (a - 1)
                for n in range(len(hs) - 1)]
        flags = [vals[n + 1] >= a * vals[n] for n in range(len(vals) - 1)]
        hyp = [hs[n + 2] / d1 + hs[n] / d2 >= z * hs[n + 1] - C
               for n in range(len(hs) - 2)]
        w = default_tail_window(len(hs) - 1)
        proxy = min(hs[n] / a ** n for n in range(len(hs) - w, len(hs)))
        return EllSequence(consts, flavor, vals, flags, hypothesis_flags=hyp,
                           ell_inf_proxy=proxy)
    if flavor == "two-sided":
        if len(hs) % 2 != 1:
            raise ValueError("two-sided heights must be indexed -m..m (odd length)")
        m = len(hs) // 2

        def h(i):
            return hs[m + i]

        plus = [h(n) / d1 - h(n - 1) / (a * d2) - C / (a - 1) for n in range(1, m + 1)]
        minus = [h(-n) / d2 - h(-n + 1) / (b * d1) - C / (b - 1) for n in range(1, m + 1)]
        flags = [plus[k + 1] >= a * plus[k] for k in range(len(plus) - 1)]
        flags_m = [minus[k + 1] >= b * minus[k] for k in range(len(minus) - 1)]
        hyp = [h(n + 1) / d1 + h(n - 1) / d2 >= z * h(n) - C
               for n in range(-m + 1, m)]
        return EllSequence(consts, flavor, plus, flags, minus, flags_m, hyp)
    raise ValueError(f"unknown flavor {flavor!r}")
