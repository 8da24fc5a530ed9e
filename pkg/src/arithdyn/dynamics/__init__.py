"""Orbits, arithmetic degrees, return sets, density probes and periodic-point surveys."""

from .arith import (ArithDegreeEstimate, EllSequence, PowerConsistency, TailReport,
                    default_tail_window, ell_sequence, estimate_arith_degree,
                    power_consistency_check)
from .density import CurveWitness, invariant_curve_search, monomial_exponents
from .dml import ReturnSet, decompose_indicator, parse_subvariety, return_set
from .orbits import (OrbitRecord, Periodicity, backward_orbit, detect_periodicity,
                     forward_orbit, full_orbit)
from .survey import SurveyReport, periodic_point_survey

__all__ = [
    "ArithDegreeEstimate", "CurveWitness", "EllSequence", "OrbitRecord", "Periodicity",
    "PowerConsistency", "ReturnSet", "SurveyReport", "TailReport", "backward_orbit",
    "decompose_indicator", "default_tail_window", "detect_periodicity", "ell_sequence",
    "estimate_arith_degree", "forward_orbit", "full_orbit", "invariant_curve_search",
    "monomial_exponents", "parse_subvariety", "periodic_point_survey",
    "power_consistency_check", "return_set",
]
