"""Exact jet computations for perturbations of ``Re(x+iy)^m``.

Decides, degree by degree, whether a jet can be made harmonic for some
metric, which is equivalent to being a smooth coordinate change of
``Re(x+iy)^m``, and reports the obstruction when it cannot.
"""

from harmjet.errors import DomainError, JetParseError, JetTooShortError
from harmjet.polyring import CxHomPoly, GradedPoly, HomPoly
from harmjet.theta import build_theta, rank_report, solve_in_image
from harmjet.jetflow import (
    EQUIVALENT,
    NOT_EQUIVALENT,
    UNDETERMINED,
    Jet,
    StarJet,
    make_fstar,
    obstruction,
    run,
    s_of_m,
)
from harmjet.geometry import MetricJet, metric_from_star, residual_decay, star_from_metric
from harmjet.analysis import codim, phi_jacobian, submersion_check
from harmjet.documents import dumps_jet, loads_jet, parse_jet

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "JetParseError",
    "JetTooShortError",
    "HomPoly",
    "CxHomPoly",
    "GradedPoly",
    "build_theta",
    "rank_report",
    "solve_in_image",
    "EQUIVALENT",
    "NOT_EQUIVALENT",
    "UNDETERMINED",
    "Jet",
    "StarJet",
    "make_fstar",
    "obstruction",
    "run",
    "s_of_m",
    "MetricJet",
    "metric_from_star",
    "residual_decay",
    "star_from_metric",
    "codim",
    "phi_jacobian",
    "submersion_check",
    "dumps_jet",
    "loads_jet",
    "parse_jet",
]
