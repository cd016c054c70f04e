"""p-rank of the Jacobian of a genus-2 curve.

The p-rank is read off the four nonzero coefficients of g_p (degrees 0, 1, p, p+1), and
independently from the Hasse-Witt matrix of g^((p-1)/2).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from pcurvature.connection import rank1_pcurvature
from pcurvature.curve import Curve, g_k
from pcurvature.exceptions import DegenerateInput, SingularCurve
from pcurvature.polyring import MPoly, monic, render
from pcurvature.polyring.multivariate import const_value
from pcurvature.solve_count import triangular_count

logger = logging.getLogger(__name__)

LINE_BUNDLE_PARAMS = ("c1", "c2")


class PRank(IntEnum):
    ZERO = 0
    ONE = 1
    TWO = 2


@dataclass(frozen=True)
class HVector:
    """Coefficients of x^0, x^1, x^p, x^(p+1) in g_p."""

    h1: MPoly
    h2: MPoly
    h3: MPoly
    h4: MPoly

    def as_tuple(self) -> tuple[MPoly, MPoly, MPoly, MPoly]:
        return self.h1, self.h2, self.h3, self.h4

    def ints(self) -> tuple[int, int, int, int]:
        return tuple(const_value(h) for h in self.as_tuple())


def h_vector(curve: Curve, p: int | None = None) -> HVector:
    """Coefficients of x^0, x^1, x^p and x^(p+1) in g_p.

    Args:
        curve (Curve): A numeric or symbolic curve.
        p (int, optional): Index of g_p. Defaults to the characteristic of the curve.

    Returns:
        HVector: (h1, h2, h3, h4), missing coefficients taken as zero.
    """
    p = curve.p if p is None else p
    coeffs = curve.x_coefficients(g_k(curve, p))
    zero = curve.ring.zero

    def at(k: int) -> MPoly:
        return coeffs[k] if k < len(coeffs) else zero

    return HVector(at(0), at(1), at(p), at(p + 1))


def g_p_remainder(curve: Curve, p: int | None = None) -> MPoly:
    """g_p minus its four named terms; zero for every curve."""
    p = curve.p if p is None else p
    h = h_vector(curve, p)
    x = curve.x
    named = h.h1 + h.h2 * x + h.h3 * x**p + h.h4 * x ** (p + 1)
    return g_k(curve, p) - named


def strata_conditions(h: HVector, p: int) -> dict[str, MPoly]:
    """The rank-2 condition and the two rank-1 conditions as polynomials in h."""
    h1, h2, h3, h4 = h.as_tuple()
    return {
        "rank2": h1 * h4 - h2 * h3,
        "rank1_a": h3**p - h2 * h4 ** (p - 1),
        "rank1_b": h1**p * h4 - h2 ** (p + 1),
    }


def classify_prank(h: HVector | Sequence[int], p: int) -> PRank:
    """2 if h1 h4 - h2 h3 != 0; else 1 if either rank-1 condition is nonzero; else 0."""
    h1, h2, h3, h4 = h.ints() if isinstance(h, HVector) else (int(v) % p for v in h)
    if (h1 * h4 - h2 * h3) % p:
        return PRank.TWO
    rank1_a = pow(h3, p, p) - h2 * pow(h4, p - 1, p)
    rank1_b = pow(h1, p, p) * h4 - pow(h2, p + 1, p)
    if rank1_a % p or rank1_b % p:
        return PRank.ONE
    return PRank.ZERO


def hasse_witt_entries(curve: Curve) -> list[list[int]]:
    """M[i][j] = c_(ip - j), i, j in {1, 2}, with c_k the coefficients of g^((p-1)/2).

    Raises:
        SingularCurve: for a nodal curve.
    """
    if curve.is_symbolic:
        raise DegenerateInput("the Hasse-Witt matrix is computed for numeric curves")
    if curve.nodal:
        raise SingularCurve("the Hasse-Witt oracle needs a smooth curve")
    p = curve.p
    h = curve.g_upoly() ** ((p - 1) // 2)
    return [[h[i * p - j].value for j in (1, 2)] for i in (1, 2)]


def _domain_matrix(rows: list[list[int]], p: int) -> DomainMatrix:
    K = GF(p)
    return DomainMatrix([[K(c) for c in row] for row in rows], (2, 2), K)


def hasse_witt_prank(curve: Curve) -> PRank:
    """rank(M M^(p)), the twist M^(p) raising every entry to the p-th power."""
    p = curve.p
    entries = hasse_witt_entries(curve)
    twisted = [[pow(c, p, p) for c in row] for row in entries]
    product = _domain_matrix(entries, p) * _domain_matrix(twisted, p)
    return PRank(product.rank())


def line_bundle_pcurvature(
    curve: Curve, p: int | None, c1: MPoly | int, c2: MPoly | int
) -> tuple[MPoly, MPoly]:
    """p-curvature of d + (c1 + c2 x) on the trivial bundle, as (x^0, x^p) coefficients."""
    p = curve.p if p is None else p
    h1, h2, h3, h4 = h_vector(curve, p).as_tuple()
    c1, c2 = curve.ring(c1), curve.ring(c2)
    return c1**p + c2 * h1 - c1 * h2, c2**p + c2 * h3 - c1 * h4


def line_bundle_direct(curve: Curve, c1: MPoly | int, c2: MPoly | int) -> MPoly:
    """The same p-curvature from the rank-1 formula, as an x-polynomial."""
    omega = curve.fn(curve.ring(c1) + curve.ring(c2) * curve.x)
    psi = rank1_pcurvature(curve, omega)
    if not psi.is_y_free():
        raise DegenerateInput("rank-1 p-curvature of an x-polynomial has a y-part")
    return psi.a


def line_bundle_system(p: int, a: Sequence[int]) -> tuple[Curve, list[MPoly]]:
    """The equations in (c1, c2) for the p-curvature of d + (c1 + c2 x) dx/y to vanish.

    Args:
        p (int): The characteristic.
        a (Sequence[int]): Coefficients a1..a5 of a smooth quintic.

    Returns:
        tuple[Curve, list[MPoly]]: The curve, whose parameters are c1 and c2, and the
            two equations.
    """
    curve = Curve.numeric(p, a, params=LINE_BUNDLE_PARAMS)
    c1, c2 = curve.param_gens
    return curve, list(line_bundle_pcurvature(curve, p, c1, c2))


def line_bundle_count(p: int, a: Sequence[int]) -> int:
    """Distinct solutions (c1, c2) over the algebraic closure of p-curvature zero."""
    _, system = line_bundle_system(p, a)
    result = triangular_count(system, ("c2", "c1"))
    logger.info(f"line bundle count for a = {list(a)} over F_{p}: {result.distinct}")
    return result.distinct


@dataclass(frozen=True)
class PRankReport:
    p: int
    coefficients: tuple[int, ...]
    h: tuple[int, int, int, int]
    prank: PRank
    oracle: PRank

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "curve": list(self.coefficients),
            "prank": int(self.prank),
            "h": list(self.h),
            "oracle": int(self.oracle),
            "agree": self.prank == self.oracle,
        }


def prank_report(p: int, a: Sequence[int]) -> PRankReport:
    """p-rank of one curve from its h-vector, next to the Hasse-Witt rank.

    Raises:
        SingularCurve: If g has a repeated root.
    """
    curve = Curve.numeric(p, a, params=())
    h = h_vector(curve)
    return PRankReport(
        p, curve.coefficients, h.ints(), classify_prank(h, p), hasse_witt_prank(curve)
    )


def prank_strata(p: int) -> dict[str, dict]:
    """Symbolic strata conditions in a1..a5, each with its monic normalization."""
    curve = Curve.symbolic(p, params=())
    conditions = strata_conditions(h_vector(curve, p), p)
    return {
        name: {"poly": poly, "monic": monic(poly), "text": render(poly)}
        for name, poly in conditions.items()
    }
