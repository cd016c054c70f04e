"""The normalized rank-2 connection and its p-curvature.

The connection acts on sections by s -> T s + theta s with T = [[0, f12], [1, 0]] and
f12 = u0 + u1 x + u2 x^2 - x^3 / 2. Its p-curvature is computed two ways:

* by instantiating the universal formula. Each factor theta^k T has the shape
  [[0, theta^k f12], [delta_k0, 0]], so every entry of the formula is a commutative
  polynomial ("template") in F_k = theta^k f12 and Fp = f_(theta^p);
* by applying the operator (T + theta)^p - f_(theta^p) (T + theta) to a section.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cache
from typing import Callable, Generic, Sequence, TypeVar

from pcurvature import settings
from pcurvature.curve import Curve, CurveFn, f_theta_p, theta_apply, theta_iterates
from pcurvature.exceptions import DegenerateInput, TooLarge, UnsupportedP
from pcurvature.nc_expand import check_odd_prime, coeff_closed_form, symbol_names
from pcurvature.polyring import MPoly, polynomial_ring, render
from pcurvature.polyring.multivariate import coeff_int

logger = logging.getLogger(__name__)

E = TypeVar("E")

ENTRY_NAMES = ("h11", "h12", "h21", "h22")


@dataclass(frozen=True, eq=False)
class Mat2(Generic[E]):
    """2x2 matrix over a commutative ring (curve functions or template polynomials)."""

    m11: E
    m12: E
    m21: E
    m22: E

    def entries(self) -> tuple[E, E, E, E]:
        return self.m11, self.m12, self.m21, self.m22

    def map(self, fn: Callable[[E], E]) -> Mat2:
        return Mat2(*(fn(e) for e in self.entries()))

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(*(a + b for a, b in zip(self.entries(), other.entries())))

    def __sub__(self, other: Mat2) -> Mat2:
        return Mat2(*(a - b for a, b in zip(self.entries(), other.entries())))

    def __neg__(self) -> Mat2:
        return self.map(lambda e: -e)

    def __mul__(self, other) -> Mat2:
        if isinstance(other, Mat2):
            return Mat2(
                self.m11 * other.m11 + self.m12 * other.m21,
                self.m11 * other.m12 + self.m12 * other.m22,
                self.m21 * other.m11 + self.m22 * other.m21,
                self.m21 * other.m12 + self.m22 * other.m22,
            )
        return self.map(lambda e: e * other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return all(a == b for a, b in zip(self.entries(), other.entries()))

    __hash__ = None

    def trace(self) -> E:
        return self.m11 + self.m22

    def det(self) -> E:
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, s: tuple[E, E]) -> tuple[E, E]:
        return self.m11 * s[0] + self.m12 * s[1], self.m21 * s[0] + self.m22 * s[1]

    @classmethod
    def scalar(cls, value: E, zero: E) -> Mat2:
        return cls(value, zero, zero, value)


def theta_mat(curve: Curve, m: Mat2[CurveFn]) -> Mat2[CurveFn]:
    return m.map(lambda e: theta_apply(curve, e))


def formula_sum(p: int, factors: Sequence[Mat2]) -> Mat2:
    """sum over compositions i of p of (n_i mod p) * factors[i_1 - 1] ... factors[i_l - 1].

    Prefix products are shared along a depth-first walk of the composition tree.
    """
    total: list[Mat2 | None] = [None]

    def walk(word: tuple[int, ...], prefix: Mat2, remaining: int):
        if remaining == 0:
            c = coeff_closed_form(p, word) % p
            term = prefix * c
            total[0] = term if total[0] is None else total[0] + term
            return
        for i in range(1, remaining + 1):
            walk(word + (i,), prefix * factors[i - 1], remaining - i)

    for first in range(1, p + 1):
        walk((first,), factors[first - 1], p - first)
    return total[0]


@cache
def entry_templates(p: int) -> dict[str, MPoly]:
    """The four p-curvature entries as polynomials in F0..F(p-1) (F_k = theta^k f12) and Fp.

    Raises:
        TooLarge: above settings.MATRIX_PRIME_MAX (the walk visits 2^(p-1) words).
    """
    check_odd_prime(p)
    if p > settings.MATRIX_PRIME_MAX:
        raise TooLarge(f"entry templates are limited to p <= {settings.MATRIX_PRIME_MAX}")
    R = polynomial_ring(symbol_names(p), p)
    F = R.gens
    factors = [Mat2(R.zero, F[k], R.one if k == 0 else R.zero, R.zero) for k in range(p)]
    psi = formula_sum(p, factors) - Mat2(R.zero, F[p] * F[0], F[p], R.zero)
    logger.debug(f"entry templates for p={p}: {[len(e) for e in psi.entries()]} terms")
    return dict(zip(ENTRY_NAMES, psi.entries()))


def instantiate(template: MPoly, values: Sequence[CurveFn]) -> CurveFn:
    """Evaluate a template polynomial at curve functions (one per template generator)."""
    curve = values[0].curve
    p = curve.p
    powers: list[list[CurveFn]] = [[curve.fn(1)] for _ in values]
    acc = curve.fn(0)
    for monom, c in template.items():
        term = curve.fn(coeff_int(c, p))
        for j, e in enumerate(monom):
            if not e:
                continue
            table = powers[j]
            while len(table) <= e:
                table.append(table[-1] * values[j])
            term = term * table[e]
        acc = acc + term
    return acc


@dataclass(frozen=True)
class PCMatrix:
    """psi(theta) = [[h11, h12], [h21, h22]]."""

    h11: CurveFn
    h12: CurveFn
    h21: CurveFn
    h22: CurveFn

    def as_mat2(self) -> Mat2[CurveFn]:
        return Mat2(self.h11, self.h12, self.h21, self.h22)

    def trace(self) -> CurveFn:
        return self.h11 + self.h22

    def has_expected_shape(self) -> bool:
        """h12, h21 are y-free; h11, h22 are y times an x-polynomial."""
        return (
            self.h12.is_y_free()
            and self.h21.is_y_free()
            and self.h11.is_odd()
            and self.h22.is_odd()
        )

    def to_json(self) -> dict:
        return {
            name: {"a": render(fn.a), "b": render(fn.b)}
            for name, fn in zip(ENTRY_NAMES, self.as_mat2().entries())
        }


class NormalizedConnection:
    """Connection with matrix [[0, f12], [1, 0]] on the distinguished unstable bundle.

    Args:
        curve: the curve, numeric or symbolic
        u: values for (u0, u1, u2); ring elements or integers. Defaults to the curve's
            parameter generators, leaving the connection symbolic in u.
    """

    def __init__(self, curve: Curve, u: Sequence[MPoly | int] | None = None):
        if u is None:
            if len(curve.param_gens) < 3:
                raise DegenerateInput("curve ring has no u0, u1, u2 generators")
            u = curve.param_gens[:3]
        if len(u) != 3:
            raise DegenerateInput(f"expected three parameters u0, u1, u2, got {len(u)}")
        self.curve = curve
        self.u = tuple(curve.ring(v) for v in u)

    @property
    def p(self) -> int:
        return self.curve.p

    @property
    def f12(self) -> MPoly:
        x = self.curve.x
        u0, u1, u2 = self.u
        return u0 + u1 * x + u2 * x**2 - self.curve.inv2 * x**3

    @property
    def matrix(self) -> Mat2[CurveFn]:
        c = self.curve
        return Mat2(c.fn(0), c.fn(self.f12), c.fn(1), c.fn(0))

    def __repr__(self) -> str:
        return f"NormalizedConnection({self.curve.label()}, f12 = {render(self.f12)})"


def _check_p(conn: NormalizedConnection, p: int | None) -> int:
    p = conn.p if p is None else p
    if p != conn.p:
        raise DegenerateInput(f"p-curvature needs p = characteristic {conn.p}, got {p}")
    return p


def pcurvature_entry(conn: NormalizedConnection, name: str, p: int | None = None) -> CurveFn:
    """One entry of the p-curvature matrix.

    Args:
        conn (NormalizedConnection): The connection.
        name (str): One of h11, h12, h21, h22.
        p (int, optional): Must equal the characteristic when given.

    Returns:
        CurveFn: The entry as a function a + b y on the curve.
    """
    p = _check_p(conn, p)
    curve = conn.curve
    values = theta_iterates(curve, curve.fn(conn.f12), p - 1)
    values.append(curve.fn(f_theta_p(curve)))
    return instantiate(entry_templates(p)[name], values)


def pcurvature_matrix(conn: NormalizedConnection, p: int | None = None) -> PCMatrix:
    """p-curvature of the normalized connection from the universal formula."""
    p = _check_p(conn, p)
    curve = conn.curve
    values = theta_iterates(curve, curve.fn(conn.f12), p - 1)
    values.append(curve.fn(f_theta_p(curve)))
    templates = entry_templates(p)
    return PCMatrix(*(instantiate(templates[name], values) for name in ENTRY_NAMES))


def pcurvature_general(
    curve: Curve, t: Mat2[CurveFn], p: int | None = None, scale: int = 1
) -> Mat2[CurveFn]:
    """p-curvature of s -> T s + theta s for an arbitrary 2x2 matrix T.

    With ``scale`` = lambda the derivation is lambda * theta, the matrix becomes
    lambda * T and f_(theta^p) becomes lambda^(p-1) f_(theta^p).
    """
    p = curve.p if p is None else p
    if p > settings.MATRIX_PRIME_MAX:
        raise TooLarge(f"direct word evaluation is limited to p <= {settings.MATRIX_PRIME_MAX}")
    scaled = t * scale
    factors = [scaled]
    for k in range(1, p):
        factors.append(theta_mat(curve, factors[-1]) * scale)
    correction = scaled * curve.fn(f_theta_p(curve) * pow(scale, p - 1, p))
    return formula_sum(p, factors) - correction


def rank1_pcurvature(curve: Curve, omega: CurveFn, p: int | None = None) -> CurveFn:
    """omega^p + theta^(p-1) omega - f_(theta^p) omega, the p-curvature of d + omega."""
    p = curve.p if p is None else p
    top = theta_iterates(curve, omega, p - 1)[-1]
    return omega**p + top - omega * curve.fn(f_theta_p(curve))


Section = tuple[CurveFn, CurveFn]


def nabla(curve: Curve, t: Mat2[CurveFn], s: Section) -> Section:
    ts = t.apply(s)
    return ts[0] + theta_apply(curve, s[0]), ts[1] + theta_apply(curve, s[1])


def operator_oracle(conn: NormalizedConnection, s: Section, p: int | None = None) -> Section:
    """nabla^p s - f_(theta^p) nabla s, computed by direct application."""
    p = _check_p(conn, p)
    curve = conn.curve
    t = conn.matrix
    first = nabla(curve, t, s)
    current = first
    for _ in range(p - 1):
        current = nabla(curve, t, current)
    ftp = curve.fn(f_theta_p(curve))
    return current[0] - ftp * first[0], current[1] - ftp * first[1]


def entry_relations(conn: NormalizedConnection, p: int | None = None) -> bool:
    """h22 = theta(h21) / 2, h11 = -h22 and h12 = f12 h21 - theta^2(h21) / 2.

    Horizontality of psi makes h21 alone decide whether the p-curvature vanishes.
    """
    p = _check_p(conn, p)
    curve = conn.curve
    psi = pcurvature_matrix(conn, p)
    d1 = theta_apply(curve, psi.h21)
    d2 = theta_apply(curve, d1)
    half = curve.inv2
    return (
        psi.h22 == d1 * half
        and psi.h11 == -psi.h22
        and psi.h12 == psi.h21 * curve.fn(conn.f12) - d2 * half
    )


def vanishing_system(conn: NormalizedConnection, p: int | None = None) -> list[MPoly]:
    """The x-coefficients of h21, lowest degree first.

    Raises:
        UnsupportedP: outside p in settings.PIPELINE_PRIMES.
    """
    p = conn.p if p is None else p
    if p not in settings.PIPELINE_PRIMES:
        raise UnsupportedP(f"vanishing systems are derived for p in {settings.PIPELINE_PRIMES}")
    h21 = pcurvature_entry(conn, "h21", _check_p(conn, p))
    if not h21.is_y_free():
        raise DegenerateInput("h21 has a y-part")
    return conn.curve.x_coefficients(h21.a)


@cache
def symbolic_connection(p: int) -> NormalizedConnection:
    """The connection over the generic curve, symbolic in a1..a5 and u0, u1, u2."""
    return NormalizedConnection(Curve.symbolic(p))


@cache
def symbolic_pcurvature(p: int) -> PCMatrix:
    logger.info(f"computing the symbolic p-curvature matrix for p={p}")
    return pcurvature_matrix(symbolic_connection(p))
