"""The determinant of the p-curvature as a polynomial map in (u0, u1, u2).

det psi is an x-polynomial supported on degrees 0, p and 2p. Its three coefficients
f1, f2, f3 define a map from the parameter space to itself whose leading terms are
-u0^p, -u1^p, -u2^p; that makes the map finite of degree p^3, and its zero fiber is
the locus of connections with nilpotent p-curvature.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from pcurvature import settings
from pcurvature.connection import (
    Mat2,
    NormalizedConnection,
    pcurvature_matrix,
    symbolic_connection,
    symbolic_pcurvature,
)
from pcurvature.curve import Curve
from pcurvature.exceptions import DegenerateInput, SupportViolation, UnsupportedP
from pcurvature.polyring import MPoly, render, total_degree_in
from pcurvature.solve_count import CountResult, triangular_count

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DetPsiMap:
    """Coefficients of x^0, x^p and x^(2p) in det psi."""

    p: int
    f1: MPoly
    f2: MPoly
    f3: MPoly
    u_indices: tuple[int, int, int]

    @property
    def components(self) -> tuple[MPoly, MPoly, MPoly]:
        return self.f1, self.f2, self.f3

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "f1": render(self.f1),
            "f2": render(self.f2),
            "f3": render(self.f3),
        }


def det_polynomial(conn: NormalizedConnection, p: int | None = None) -> MPoly:
    """det psi = h11 h22 - h12 h21 as an x-polynomial."""
    curve = conn.curve
    p = curve.p if p is None else p
    generic = symbolic_connection(p)
    if curve.ring == generic.curve.ring and conn.u == generic.u:
        psi = symbolic_pcurvature(p)
    else:
        psi = pcurvature_matrix(conn, p)
    det = psi.as_mat2().det()
    if not det.is_y_free():
        raise DegenerateInput("det of the p-curvature has a y-part")
    return det.a


def det_psi(curve: Curve, p: int | None = None) -> DetPsiMap:
    """The determinant map of the connection symbolic in u0, u1, u2.

    Raises:
        UnsupportedP: outside p in settings.PIPELINE_PRIMES.
        SupportViolation: if an x-degree other than 0, p, 2p survives.
    """
    p = curve.p if p is None else p
    if p not in settings.PIPELINE_PRIMES:
        raise UnsupportedP(f"det psi is computed for p in {settings.PIPELINE_PRIMES}")
    conn = NormalizedConnection(curve)
    coeffs = curve.x_coefficients(det_polynomial(conn, p))
    allowed = {0, p, 2 * p}
    stray = [k for k, c in enumerate(coeffs) if c and k not in allowed]
    if stray:
        raise SupportViolation(f"det psi has nonzero x-degrees {stray} for p={p}")
    zero = curve.ring.zero

    def at(k: int) -> MPoly:
        return coeffs[k] if k < len(coeffs) else zero

    logger.info(f"det psi for p={p}: {[len(at(k)) for k in sorted(allowed)]} terms")
    u = curve.param_indices[:3]
    return DetPsiMap(p, at(0), at(p), at(2 * p), tuple(u))


def leading_term_certificate(dmap: DetPsiMap, p: int | None = None) -> bool:
    """deg_u(f_i + u_(i-1)^p) < p for i = 1, 2, 3."""
    p = dmap.p if p is None else p
    gens = dmap.f1.ring.gens
    for f, i in zip(dmap.components, dmap.u_indices):
        rest = f + gens[i] ** p
        if total_degree_in(rest, dmap.u_indices) >= p:
            logger.debug(f"leading term of the {i}-th component fails: {render(rest)}")
            return False
    return True


def frobenius_power_identity(conn: NormalizedConnection, p: int | None = None) -> bool:
    """T^p = [[0, f12^((p+1)/2)], [f12^((p-1)/2), 0]], from T^2 = f12 I."""
    curve = conn.curve
    p = curve.p if p is None else p
    t = conn.matrix
    power = t
    for _ in range(p - 1):
        power = power * t
    f = curve.fn(conn.f12)
    zero = curve.fn(0)
    return power == Mat2(zero, f ** ((p + 1) // 2), f ** ((p - 1) // 2), zero)


def top_degree_cancels(conn: NormalizedConnection, p: int | None = None) -> bool:
    """The x^(3p) coefficient of det psi vanishes.

    (-f12)^p alone contributes 2^(-p) x^(3p); the f_(theta^p) terms must cancel it.
    """
    p = conn.p if p is None else p
    coeffs = conn.curve.x_coefficients(det_polynomial(conn, p))
    return len(coeffs) <= 3 * p or not coeffs[3 * p]


def nilpotent_locus_count(curve: Curve, expensive: bool = False) -> CountResult:
    """Connections (u0, u1, u2) over the algebraic closure with f1 = f2 = f3 = 0.

    Only p = 3 runs by default; p = 5, 7 need ``expensive``.

    Raises:
        UnsupportedP: for p = 5, 7 without ``expensive`` and for any other p.
        PositiveDimensional: if the zero fiber is not finite.
    """
    if curve.is_symbolic:
        raise DegenerateInput("the nilpotent locus is counted on a numeric curve")
    if curve.p not in settings.PIPELINE_PRIMES or (curve.p != 3 and not expensive):
        raise UnsupportedP(f"nilpotent locus count at p={curve.p} needs --expensive")
    dmap = det_psi(curve)
    result = triangular_count(dmap.components, ("u0", "u1", "u2"), with_solutions=True)
    logger.info(f"{curve.label()}: {result.distinct} nilpotent connections")
    return result
