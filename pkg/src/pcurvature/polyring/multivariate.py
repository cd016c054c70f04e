"""Sparse multivariate polynomials over F_p.

The carrier is :class:`sympy.polys.rings.PolyElement` in a ring over ``GF(p)`` whose
generators are named by a :class:`VarSet`. This module adds what the elimination code
needs on top of sympy: coefficient extraction by variable, Sylvester resultants by
fraction-free elimination, specialization at extension-field points, and the
canonical text/JSON forms (graded lexicographic, coefficients in [0, p)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import Any, Iterable, Mapping

from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import GF
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from pcurvature.exceptions import DegenerateInput
from pcurvature.polyring.univariate import UPoly
from pcurvature.prime_field import Elem, Field

MPoly = PolyElement


@dataclass(frozen=True)
class VarSet:
    """Ordered, duplicate-free variable names of a polynomial ring."""

    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise DegenerateInput(f"duplicate variable names in {self.names}")

    def index(self, name: str) -> int:
        return self.names.index(name)

    def ring(self, p: int) -> PolyRing:
        return polynomial_ring(self.names, p)

    def __len__(self) -> int:
        return len(self.names)


@cache
def polynomial_ring(names: tuple[str, ...], p: int) -> PolyRing:
    """The ring F_p[names] with graded lexicographic order."""
    R, *_ = ring(",".join(names), GF(p), grlex)
    return R


def names_of(f: MPoly) -> tuple[str, ...]:
    return tuple(str(s) for s in f.ring.symbols)


def gen(R: PolyRing, name: str) -> MPoly:
    return R.gens[[str(s) for s in R.symbols].index(name)]


def characteristic(f: MPoly) -> int:
    return int(f.ring.domain.mod)


def coeff_int(c: Any, p: int) -> int:
    """Canonical representative of a ground coefficient."""
    return int(c) % p


def const_value(f: MPoly) -> int:
    """Value of a constant polynomial as an integer in [0, p)."""
    p = characteristic(f)
    for monom, c in f.items():
        if any(monom):
            raise DegenerateInput(f"{render(f)} is not a constant")
        return coeff_int(c, p)
    return 0


def grlex_key(monom: tuple[int, ...]) -> tuple:
    return (sum(monom), monom)


def sorted_terms(f: MPoly) -> list[tuple[tuple[int, ...], int]]:
    """Terms in descending graded-lex order with canonical integer coefficients."""
    p = characteristic(f)
    terms = [(m, coeff_int(c, p)) for m, c in f.items()]
    terms = [(m, c) for m, c in terms if c]
    return sorted(terms, key=lambda t: grlex_key(t[0]), reverse=True)


def leading_coeff(f: MPoly) -> int:
    terms = sorted_terms(f)
    if not terms:
        raise DegenerateInput("zero polynomial has no leading coefficient")
    return terms[0][1]


def monic(f: MPoly) -> MPoly:
    """f scaled so that its graded-lex leading coefficient is 1."""
    if not f:
        return f
    p = characteristic(f)
    return f * pow(leading_coeff(f), -1, p)


def render(f: MPoly) -> str:
    """Canonical text: graded-lex descending, coefficients in [0, p), '*' and '^'."""
    names = names_of(f)
    parts = []
    for monom, c in sorted_terms(f):
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c), *factors]))
    return " + ".join(parts) if parts else "0"


def to_json(f: MPoly) -> dict:
    return {
        "vars": list(names_of(f)),
        "terms": [{"exp": list(m), "coeff": c} for m, c in sorted_terms(f)],
    }


def from_json(data: Mapping, p: int) -> MPoly:
    R = polynomial_ring(tuple(data["vars"]), p)
    return R.from_dict({tuple(t["exp"]): t["coeff"] for t in data["terms"]})


# structure by variable -------------------------------------------------------------------


def degree_in(f: MPoly, i: int) -> int:
    """Degree in generator i; -1 for the zero polynomial."""
    return max((m[i] for m in f.keys()), default=-1)


def total_degree_in(f: MPoly, indices: Iterable[int]) -> int:
    """Largest total degree of a term counted over the given generators only."""
    indices = tuple(indices)
    return max((sum(m[i] for i in indices) for m in f.keys()), default=-1)


def is_free_of(f: MPoly, i: int) -> bool:
    return all(m[i] == 0 for m in f.keys())


def coefficients_in(f: MPoly, i: int) -> dict[int, MPoly]:
    """f = sum_k coefficients[k] * v_i^k with coefficients free of v_i."""
    buckets: dict[int, dict] = {}
    for monom, c in f.items():
        k = monom[i]
        reduced = monom[:i] + (0,) + monom[i + 1 :]
        buckets.setdefault(k, {})[reduced] = c
    return {k: f.ring.from_dict(terms) for k, terms in buckets.items()}


def coefficient_list(f: MPoly, i: int) -> list[MPoly]:
    """Dense list of coefficients in v_i, lowest degree first."""
    by_degree = coefficients_in(f, i)
    return [by_degree.get(k, f.ring.zero) for k in range(degree_in(f, i) + 1)]


def diff(f: MPoly, i: int) -> MPoly:
    """Partial derivative in generator i, with no zero coefficients stored."""
    terms = {}
    for monom, c in f.items():
        e = monom[i]
        if e:
            terms[monom[:i] + (e - 1,) + monom[i + 1 :]] = c * e
    return f.ring.from_dict(terms)


def substitute(f: MPoly, i: int, value: MPoly | int) -> MPoly:
    """f with generator i replaced by a polynomial (or integer) of the same ring."""
    return f.compose(f.ring.gens[i], f.ring(value))


def solve_linear(f: MPoly, i: int) -> MPoly:
    """The value of v_i making f vanish, for f = alpha * v_i + beta with constant alpha.

    Raises:
        DegenerateInput: if f is not linear in v_i with a nonzero constant coefficient.
    """
    coeffs = coefficients_in(f, i)
    if degree_in(f, i) != 1:
        raise DegenerateInput(f"{render(f)} is not linear in {names_of(f)[i]}")
    alpha = coeffs[1]
    if not alpha.is_ground:
        raise DegenerateInput(f"coefficient of {names_of(f)[i]} is not a constant")
    beta = coeffs.get(0, f.ring.zero)
    p = characteristic(f)
    return -beta * pow(const_value(alpha), -1, p)


# resultants -------------------------------------------------------------------------------


def sylvester_matrix(f: MPoly, g: MPoly, i: int) -> list[list[MPoly]]:
    R = f.ring
    fc = coefficient_list(f, i)[::-1]
    gc = coefficient_list(g, i)[::-1]
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    rows = []
    for r in range(n):
        rows.append([R.zero] * r + fc + [R.zero] * (size - m - 1 - r))
    for r in range(m):
        rows.append([R.zero] * r + gc + [R.zero] * (size - n - 1 - r))
    return rows


def bareiss_determinant(matrix: list[list[MPoly]]) -> MPoly:
    """Determinant by fraction-free Gaussian elimination over the polynomial ring."""
    M = [row[:] for row in matrix]
    n = len(M)
    if n == 0:
        raise DegenerateInput("determinant of an empty matrix")
    R = M[0][0].ring
    sign = 1
    previous = R.one
    for k in range(n - 1):
        if not M[k][k]:
            pivot = next((r for r in range(k + 1, n) if M[r][k]), None)
            if pivot is None:
                return R.zero
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                M[r][c] = (M[r][c] * M[k][k] - M[r][k] * M[k][c]).exquo(previous)
            M[r][k] = R.zero
        previous = M[k][k]
    return M[n - 1][n - 1] * sign


def resultant(f: MPoly, g: MPoly, i: int) -> MPoly:
    """Sylvester resultant of f and g with respect to generator i.

    Raises:
        DegenerateInput: if f or g is zero.
    """
    if not f or not g:
        raise DegenerateInput("resultant with the zero polynomial")
    m, n = degree_in(f, i), degree_in(g, i)
    if m == 0 and n == 0:
        return f.ring.one
    if m == 0:
        return f**n
    if n == 0:
        return g**m
    return bareiss_determinant(sylvester_matrix(f, g, i))


# evaluation at field points ------------------------------------------------------------------


def _power_table(values: Mapping[int, Elem]) -> dict[int, list]:
    return {i: [v * 0 + 1] for i, v in values.items()}


def _power(table: dict[int, list], values: Mapping[int, Elem], i: int, e: int):
    powers = table[i]
    while len(powers) <= e:
        powers.append(powers[-1] * values[i])
    return powers[e]


def specialize(f: MPoly, values: Mapping[int, Elem], var: int, field: Field) -> UPoly:
    """The univariate polynomial in generator ``var`` obtained by substituting ``values``.

    Every generator other than ``var`` occurring in f must have a value; values live in
    ``field`` (or its prime field).
    """
    p = characteristic(f)
    table = _power_table(values)
    coeffs: dict[int, Elem] = {}
    for monom, c in f.items():
        term = field(coeff_int(c, p))
        for j, e in enumerate(monom):
            if j == var or not e:
                continue
            if j not in values:
                raise DegenerateInput(f"no value for {names_of(f)[j]}")
            term = term * _power(table, values, j, e)
        k = monom[var]
        coeffs[k] = coeffs[k] + term if k in coeffs else term
    degree = max(coeffs, default=-1)
    return UPoly(field, [coeffs.get(k, field.zero) for k in range(degree + 1)])


def evaluate(f: MPoly, values: Mapping[int, Elem], field: Field) -> Elem:
    """Value of f at a point (generators absent from ``values`` must not occur in f)."""
    p = characteristic(f)
    table = _power_table(values)
    acc = field.zero
    for monom, c in f.items():
        term = field(coeff_int(c, p))
        for j, e in enumerate(monom):
            if e:
                if j not in values:
                    raise DegenerateInput(f"no value for {names_of(f)[j]}")
                term = term * _power(table, values, j, e)
        acc = acc + term
    return acc


def to_upoly(f: MPoly, i: int, field: Field) -> UPoly:
    """f, which may only involve generator i, as a univariate polynomial over F_p."""
    p = characteristic(f)
    coeffs: dict[int, int] = {}
    for monom, c in f.items():
        if any(e for j, e in enumerate(monom) if j != i):
            raise DegenerateInput(f"{render(f)} is not univariate in {names_of(f)[i]}")
        coeffs[monom[i]] = coeff_int(c, p)
    degree = max(coeffs, default=-1)
    return UPoly(field, [coeffs.get(k, 0) for k in range(degree + 1)])


def from_upoly(u: UPoly, R: PolyRing, i: int) -> MPoly:
    terms = {}
    for k, c in enumerate(u.coeffs):
        if not c.is_zero:
            monom = [0] * R.ngens
            monom[i] = k
            terms[tuple(monom)] = int(c)
    return R.from_dict(terms)


def to_ring(f: MPoly, R: PolyRing) -> MPoly:
    """Move f into ring R by matching generator names (missing names must not occur)."""
    source = names_of(f)
    target = [str(s) for s in R.symbols]
    p = characteristic(f)
    terms = {}
    for monom, c in f.items():
        new = [0] * R.ngens
        for name, e in zip(source, monom):
            if e:
                if name not in target:
                    raise DegenerateInput(f"{name} does not exist in the target ring")
                new[target.index(name)] = e
        terms[tuple(new)] = coeff_int(c, p)
    return R.from_dict(terms)


def parse(text: str, R: PolyRing) -> MPoly:
    """Polynomial from text such as ``"3 a1^2 u2 + 4 a5"`` (juxtaposition multiplies)."""
    transformations = standard_transformations + (implicit_multiplication, convert_xor)
    return R.from_expr(parse_expr(text, transformations=transformations))
