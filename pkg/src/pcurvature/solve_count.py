"""Counting connections with vanishing p-curvature.

Every count runs through :func:`triangular_count`, a resultant-based solver with exact
back-substitution over explicit extension fields. The elimination steps specific to
p = 3, 5, 7 (solving the top x-coefficients of h21 for u0 and u1, the quintic, the four
plane curves and the substitution pipeline for u1) are reproduced on top of it and
cross-checked against it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import cache
from typing import Sequence

from pcurvature import settings
from pcurvature.connection import NormalizedConnection, vanishing_system
from pcurvature.curve import Curve
from pcurvature.exceptions import (
    DegenerateInput,
    DegeneratePipeline,
    PCurvatureError,
    PositiveDimensional,
    UnsupportedP,
)
from pcurvature.hurwitz import closed_form
from pcurvature.polyring import (
    MPoly,
    UPoly,
    coefficients_in,
    count_distinct_roots_closure,
    degree_in,
    evaluate,
    field_embedding,
    find_root,
    irreducible_factors,
    parse,
    residue_field,
    resultant,
    solve_linear,
    specialize,
    substitute,
    to_upoly,
    upoly_gcd,
)
from pcurvature.polyring.multivariate import const_value, names_of
from pcurvature.prime_field import Elem, Field, ext_field, frobenius, prime_field

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Solution:
    """A point of the solution set, coordinates in the order of the unknowns."""

    values: tuple[Elem, ...]
    field: Field = field(repr=False)

    @property
    def degree(self) -> int:
        return self.field.degree

    def to_json(self) -> dict:
        data = {"values": [str(v) for v in self.values], "degree": self.degree}
        if not self.field.is_prime_field:
            data["modulus"] = list(self.field.modulus)
        return data


def solution_orbit(solution: Solution) -> list[Solution]:
    """The solution and its images under Frobenius, up to the first repetition.

    Args:
        solution (Solution): A point of the system with coordinates in F_(p^k).

    Returns:
        list[Solution]: The Frobenius orbit, starting with ``solution``; its length
            divides k.
    """
    result = [solution]
    current = tuple(frobenius(v) for v in solution.values)
    while current != solution.values:
        result.append(Solution(current, solution.field))
        current = tuple(frobenius(v) for v in current)
    return result


@dataclass(frozen=True)
class CountResult:
    """Solutions of a zero-dimensional system over the algebraic closure of F_p.

    ``with_multiplicity`` weighs each Frobenius orbit by the product of the root
    multiplicities met along its back-substitution chain.
    """

    p: int
    unknowns: tuple[str, ...]
    distinct: int
    with_multiplicity: int
    eliminant: UPoly
    representatives: tuple[tuple[Solution, int], ...] = ()
    solutions: tuple[Solution, ...] | None = None
    method: str = "triangular"
    cross_check: int | None = None
    pipeline_applicable: bool | None = None

    @property
    def total(self) -> int:
        """One class per theta characteristic."""
        return settings.THETA_CHARACTERISTICS * self.distinct

    def to_json(self, total: bool = False, solutions: bool = False) -> dict:
        data = {
            "p": self.p,
            "e_p": self.distinct,
            "with_multiplicity": self.with_multiplicity,
            "general_value": closed_form(self.p),
            "method": self.method,
            "unknowns": list(self.unknowns),
            "eliminant": self.eliminant.ints(),
        }
        if self.cross_check is not None:
            data["cross_check"] = self.cross_check
        if self.pipeline_applicable is not None:
            data["pipeline_applicable"] = self.pipeline_applicable
        if total:
            data["total"] = self.total
        if solutions:
            data["solutions"] = [s.to_json() for s in self.solutions or ()]
        return data


# generic triangular solver ------------------------------------------------------------------


def _pivot(polys: list[MPoly], i: int) -> MPoly | None:
    candidates = [f for f in polys if degree_in(f, i) > 0]
    if not candidates:
        return None
    return min(candidates, key=lambda f: (degree_in(f, i), len(f)))


def _eliminate(polys: list[MPoly], i: int) -> list[MPoly]:
    pivot = _pivot(polys, i)
    if pivot is None:
        return polys
    out = [f for f in polys if degree_in(f, i) <= 0]
    for f in polys:
        if f is pivot or degree_in(f, i) <= 0:
            continue
        r = resultant(pivot, f, i)
        if r:
            out.append(r)
    unique = []
    for f in out:
        if f not in unique:
            unique.append(f)
    return unique


def _fiber_gcd(polys: list[MPoly], values: dict[int, Elem], i: int, K: Field) -> UPoly | None:
    """gcd over K of the stage polynomials specialized at a partial solution."""
    result: UPoly | None = None
    for f in polys:
        u = specialize(f, values, i, K)
        if u.is_zero:
            continue
        result = u if result is None else upoly_gcd(result, u)
    return result


def _extend(
    K: Field, values: dict[int, Elem], factor: UPoly, i: int
) -> tuple[Field, dict[int, Elem]]:
    """Adjoin a root of an irreducible factor over K to a partial solution."""
    if factor.degree == 1:
        monic_factor = factor.monic()
        return K, {**values, i: -monic_factor.coeffs[0]}
    L = ext_field(K.characteristic, K.degree * factor.degree)
    embed = field_embedding(K, L)
    lifted = UPoly(L, [embed(c) for c in factor.coeffs])
    root = find_root(lifted)
    return L, {**{j: embed(v) for j, v in values.items()}, i: root}


def triangular_count(
    system: Sequence[MPoly], unknowns: Sequence[str], with_solutions: bool = False
) -> CountResult:
    """Solve a zero-dimensional system by resultants and back-substitution.

    Unknowns are eliminated in the given order; the last one carries the univariate
    eliminant. Each irreducible factor of the eliminant is adjoined through its
    residue field, and every later coordinate is found as a root of the gcd of the
    specialized stage polynomials, so each Frobenius orbit of solutions is met exactly
    once.

    Raises:
        PositiveDimensional: if a coordinate is left unconstrained.
    """
    system = [f for f in system if f]
    if not system:
        raise PositiveDimensional("empty system")
    R = system[0].ring
    p = int(R.domain.mod)
    names = names_of(system[0])
    idx = [names.index(u) for u in unknowns]

    stages = [system]
    for i in idx[:-1]:
        stages.append(_eliminate(stages[-1], i))
        logger.debug(f"eliminated {names[i]}: {len(stages[-1])} polynomials remain")

    last = idx[-1]
    Fp = prime_field(p)
    finals = [to_upoly(f, last, Fp) for f in stages[-1] if f]
    if not finals:
        raise PositiveDimensional(f"no equation constrains {names[last]}")
    eliminant = finals[0]
    for u in finals[1:]:
        eliminant = upoly_gcd(eliminant, u)
    eliminant = eliminant.monic()
    logger.info(f"eliminant in {names[last]} of degree {eliminant.degree} over F_{p}")

    partials: list[tuple[Field, dict[int, Elem], int]] = []
    if eliminant.degree > 0:
        for q, m in irreducible_factors(eliminant):
            K = residue_field(q)
            root = K.gen if q.degree > 1 else -q.coeffs[0]
            partials.append((K, {last: root}, m))

    for k in range(len(idx) - 2, -1, -1):
        i = idx[k]
        extended = []
        for K, values, mult in partials:
            fiber = _fiber_gcd(stages[k], values, i, K)
            if fiber is None:
                raise PositiveDimensional(f"{names[i]} is unconstrained over a solution")
            if fiber.degree < 1:
                continue
            for factor, m in irreducible_factors(fiber):
                L, new_values = _extend(K, values, factor, i)
                extended.append((L, new_values, mult * m))
        partials = extended

    representatives = []
    distinct = with_multiplicity = 0
    for K, values, mult in partials:
        solution = Solution(tuple(values[i] for i in idx), K)
        for f in system:
            if not evaluate(f, values, K).is_zero:
                raise PCurvatureError(f"back-substitution produced a non-solution {solution}")
        size = len(solution_orbit(solution))
        representatives.append((solution, mult))
        distinct += size
        with_multiplicity += size * mult

    solutions = None
    if with_solutions:
        solutions = tuple(s for rep, _ in representatives for s in solution_orbit(rep))
        for s in solutions:
            values = dict(zip(idx, s.values))
            assert all(evaluate(f, values, s.field).is_zero for f in system)

    return CountResult(
        p=p,
        unknowns=tuple(unknowns),
        distinct=distinct,
        with_multiplicity=with_multiplicity,
        eliminant=eliminant,
        representatives=tuple(representatives),
        solutions=solutions,
    )


# p = 3 ---------------------------------------------------------------------------------------


def _require(curve: Curve, p: int):
    if curve.p != p:
        raise UnsupportedP(f"this pipeline needs characteristic {p}, got {curve.p}")


def count_p3(curve: Curve) -> CountResult:
    """The unique solution (a3, 0, 0) of h21 = f12 - f_(theta^3) = 0."""
    _require(curve, 3)
    system = vanishing_system(NormalizedConnection(curve))
    return triangular_count(system, ("u0", "u1", "u2"), with_solutions=True)


# p = 5 ---------------------------------------------------------------------------------------


@dataclass(frozen=True)
class P5Reduction:
    """h21 at p = 5 after solving its x^4 coefficient for u1 and x^3 for u0."""

    u0: MPoly
    u1: MPoly
    x2: MPoly
    quintic: MPoly
    constant: MPoly

    @property
    def x2_vanishes(self) -> bool:
        return not self.x2


def p5_reduction(curve: Curve) -> P5Reduction:
    _require(curve, 5)
    c = vanishing_system(NormalizedConnection(curve))
    c += [curve.ring.zero] * (5 - len(c))
    i0, i1, _ = curve.param_indices[:3]
    u1 = solve_linear(c[4], i1)
    u0 = solve_linear(substitute(c[3], i1, u1), i0)

    def reduce(f: MPoly) -> MPoly:
        return substitute(substitute(f, i1, u1), i0, u0)

    return P5Reduction(u0, u1, reduce(c[2]), reduce(c[1]), reduce(c[0]))


def quintic_p5(curve: Curve) -> MPoly:
    """The degree-5 polynomial in u2 whose roots are the solutions.

    Raises:
        UnsupportedP: for p != 5.
    """
    return p5_reduction(curve).quintic


def count_p5(curve: Curve) -> CountResult:
    """e_5 as the number of distinct roots of the quintic, cross-checked by triangular_count."""
    reduction = p5_reduction(curve)
    if reduction.x2:
        raise PCurvatureError("the x^2 coefficient of h21 survives the p = 5 reduction")
    quintic = to_upoly(reduction.quintic, curve.param_indices[2], prime_field(5))
    generic = triangular_count(
        vanishing_system(NormalizedConnection(curve)), ("u0", "u1", "u2"), with_solutions=True
    )
    distinct = count_distinct_roots_closure(quintic)
    if distinct != generic.distinct:
        raise PCurvatureError(
            f"quintic count {distinct} disagrees with triangular count {generic.distinct}"
        )
    return replace(
        generic,
        with_multiplicity=quintic.degree,
        eliminant=quintic.monic(),
        method="quintic",
        cross_check=generic.distinct,
    )


# p = 7 ---------------------------------------------------------------------------------------

X3_MULTIPLIER = "-(u2^2 + a1*u2 + 3*a2 + u1)"
X2_MULTIPLIER = "-(5*u2^3 + 5*a1*u2^2 + 2*u1*u2 + 5*a1*a2 + 4*a3 + 2*a1*u1)"
X1_MULTIPLIER = "-(5*u1*u2^2 + 5*a1*u1*u2 + 6*a4 + 2*u1^2)"
X0_MULTIPLIER = (
    "-(6*u2^5 + 5*u1*u2^3 + 3*a1^2*u2^3 + 2*a1^3*u2^2 + 5*a1*a2*u2^2 + 2*a3*u2^2"
    " + 6*a1*u1*u2^2 + 5*a1^2*a2*u2 + 2*a1*a3*u2 + 2*a4*u2 + a1^2*u1*u2 + 2*a2*u1*u2"
    " + 2*u1^2*u2 + 6*a1*a4 + 4*a5 + 4*a1*a2*u1 + 3*a3*u1 + 3*a1*u1^2)"
)


@cache
def _generic_multiplier(text: str) -> MPoly:
    return parse(text, Curve.symbolic(7).ring)


@dataclass(frozen=True)
class P7System:
    """The four plane curves in (u1, u2) left after solving the x^6 coefficient for u0."""

    u0: MPoly
    h71: MPoly
    h72: MPoly
    h73: MPoly
    h74: MPoly
    x4_is_multiple: bool
    x3_is_multiple: bool

    @property
    def polys(self) -> list[MPoly]:
        return [self.h71, self.h72, self.h73, self.h74]


def system_p7(curve: Curve) -> P7System:
    """Raises UnsupportedP for p != 7."""
    _require(curve, 7)
    c = vanishing_system(NormalizedConnection(curve))
    c += [curve.ring.zero] * (7 - len(c))
    i0 = curve.param_indices[0]
    u0 = solve_linear(c[6], i0)
    d = [substitute(f, i0, u0) for f in c]
    h71 = d[5]
    u2 = curve.param_gens[2]

    def multiplier(text: str) -> MPoly:
        return curve.from_generic(_generic_multiplier(text))

    return P7System(
        u0=u0,
        h71=h71,
        h72=d[2] - multiplier(X2_MULTIPLIER) * h71,
        h73=d[1] - multiplier(X1_MULTIPLIER) * h71,
        h74=d[0] - multiplier(X0_MULTIPLIER) * h71,
        x4_is_multiple=d[4] == -u2 * h71,
        x3_is_multiple=d[3] == multiplier(X3_MULTIPLIER) * h71,
    )


def _to_u2(f: MPoly, i: int) -> UPoly:
    return to_upoly(f, i, prime_field(int(f.ring.domain.mod)))


def _reduce_quadratic(f: MPoly, h: MPoly, i: int) -> MPoly:
    """Remainder of f modulo h in generator i, for h of degree 2 with constant leading term."""
    lead = coefficients_in(h, i)[2]
    inv = pow(const_value(lead), -1, int(f.ring.domain.mod))
    v = f.ring.gens[i]
    while degree_in(f, i) >= 2:
        d = degree_in(f, i)
        top = coefficients_in(f, i)[d]
        f = f - top * inv * v ** (d - 2) * h
    return f


@dataclass(frozen=True)
class PipelineResult:
    eliminant: UPoly
    distinct: int
    with_multiplicity: int
    linear_coefficient: UPoly
    constant_term: UPoly


def substitution_pipeline_p7(system: P7System, curve: Curve) -> PipelineResult:
    """Use h71 to lower h72 to A u1 + B, substitute u1 = -B/A, reduce to u2.

    Raises:
        DegeneratePipeline: if h71 is not a quadratic in u1 with constant leading
            coefficient, or A shares a root with the eliminant.
    """
    R = curve.ring
    i1, i2 = curve.param_indices[1:3]
    h71 = system.h71
    coeffs = coefficients_in(h71, i1)
    if degree_in(h71, i1) != 2 or not coeffs[2].is_ground:
        raise DegeneratePipeline("h71 is not a quadratic in u1 with constant leading term")
    reduced = _reduce_quadratic(system.h72, h71, i1)
    r = coefficients_in(reduced, i1)
    A, B = r.get(1, R.zero), r.get(0, R.zero)
    if not A:
        raise DegeneratePipeline("h72 reduces to a polynomial free of u1")
    alpha, beta, gamma = coeffs[2], coeffs.get(1, R.zero), coeffs.get(0, R.zero)
    E = alpha * B**2 - beta * A * B + gamma * A**2
    if not E:
        raise DegeneratePipeline("the resultant of h71 and A u1 + B vanishes identically")

    def homogenized(f: MPoly) -> MPoly:
        # A^deg f(-B/A)
        d = degree_in(f, i1)
        fc = coefficients_in(f, i1)
        return sum((c * (-B) ** k * A ** (d - k) for k, c in fc.items()), R.zero)

    eliminant = _to_u2(E, i2)
    for h in system.polys[1:]:
        eliminant = upoly_gcd(eliminant, _to_u2(homogenized(h), i2))
    A_u = _to_u2(A, i2)
    if upoly_gcd(A_u, eliminant).degree > 0:
        raise DegeneratePipeline("A vanishes at a root of the eliminant")
    eliminant = eliminant.monic()
    distinct = count_distinct_roots_closure(eliminant)
    return PipelineResult(eliminant, distinct, eliminant.degree, A_u, _to_u2(B, i2))


def _with_u0(result: CountResult, u0: MPoly, curve: Curve) -> CountResult:
    """Complete (u1, u2) solutions with the value of u0 they determine."""
    i1, i2 = curve.param_indices[1:3]

    def lift(s: Solution) -> Solution:
        values = {i1: s.values[0], i2: s.values[1]}
        return Solution((evaluate(u0, values, s.field), *s.values), s.field)

    representatives = tuple((lift(s), m) for s, m in result.representatives)
    solutions = None if result.solutions is None else tuple(map(lift, result.solutions))
    return replace(
        result,
        unknowns=("u0", *result.unknowns),
        representatives=representatives,
        solutions=solutions,
    )


def count_p7(curve: Curve, strict: bool = False) -> CountResult:
    """e_7 from the substitution pipeline, checked against triangular_count.

    Raises:
        DegeneratePipeline: with ``strict`` when the pipeline does not apply; the
            generic result is attached as ``fallback``. Without ``strict`` the generic
            result is returned with ``pipeline_applicable=False``.
    """
    system = system_p7(curve)
    if not (system.x4_is_multiple and system.x3_is_multiple):
        raise PCurvatureError("x^4, x^3 coefficients are not the expected multiples of h71")
    generic = triangular_count(system.polys, ("u1", "u2"), with_solutions=True)
    generic = _with_u0(generic, system.u0, curve)
    try:
        pipeline = substitution_pipeline_p7(system, curve)
    except DegeneratePipeline as exc:
        fallback = replace(generic, pipeline_applicable=False)
        if strict:
            raise DegeneratePipeline(str(exc), fallback=fallback) from exc
        logger.warning(f"{curve.label()}: {exc}; using the triangular count")
        return fallback
    if pipeline.distinct != generic.distinct:
        raise PCurvatureError(
            f"pipeline count {pipeline.distinct} disagrees with triangular {generic.distinct}"
        )
    return replace(
        generic,
        eliminant=pipeline.eliminant,
        with_multiplicity=pipeline.with_multiplicity,
        method="pipeline",
        cross_check=generic.distinct,
        pipeline_applicable=True,
    )


def count(curve: Curve) -> CountResult:
    """Dispatch on the characteristic."""
    counters = {3: count_p3, 5: count_p5, 7: count_p7}
    if curve.p not in counters:
        raise UnsupportedP(f"counts are available for p in {settings.PIPELINE_PRIMES}")
    if curve.is_symbolic:
        raise DegenerateInput("counts need a numeric curve")
    return counters[curve.p](curve)
