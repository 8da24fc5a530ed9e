"""Exact arithmetic-dynamics experiments for polynomial and rational maps over Q."""

from .algebra import MultiPoly, parse_poly
from .degrees import (DegreeSequence, LemmaConstants, degree_sequence, estimate_delta1,
                      hyperbolicity_report, lemma_constants, topological_degree)
from .dynamics import (estimate_arith_degree, forward_orbit, full_orbit,
                       invariant_curve_search, periodic_point_survey, return_set)
from .errors import (ArithDynError, ArityError, BadPrimeError, InvalidParameterError,
                     ParseError, ResourceLimitError, VariableMismatchError)
from .heights import AffinePoint, Height, ProjPoint, parse_point, weil_height
from .maps import (INDETERMINATE, AffinePolyMap, ProjRationalMap, compose, dehomogenize,
                   homogenize, inverse_check, iterate, saturate)
from .zoo import zoo_get, zoo_listing

__version__ = "0.1.0"
