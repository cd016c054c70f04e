"""p-curvature of connections on genus-2 curves in characteristic p."""

from pcurvature.connection import NormalizedConnection, pcurvature_matrix
from pcurvature.curve import Curve, f_theta_p, g_k
from pcurvature.exceptions import PCurvatureError
from pcurvature.nc_expand import pcurvature_formula
from pcurvature.solve_count import CountResult, count

__version__ = "0.1.0"

__all__ = [
    "CountResult",
    "Curve",
    "NormalizedConnection",
    "PCurvatureError",
    "count",
    "f_theta_p",
    "g_k",
    "pcurvature_formula",
    "pcurvature_matrix",
]
