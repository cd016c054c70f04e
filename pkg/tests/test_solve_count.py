import pytest

from pcurvature.curve import Curve, random_curve, random_curve_coefficients
from pcurvature.exceptions import DegenerateInput, PositiveDimensional, UnsupportedP
from pcurvature.polyring import monic, parse, polynomial_ring
from pcurvature.polyring.univariate import upoly_from_ints
from pcurvature.solve_count import (
    count,
    count_p3,
    count_p5,
    count_p7,
    p5_reduction,
    quintic_p5,
    solution_orbit,
    system_p7,
    triangular_count,
)
from pcurvature.verify import (
    P5_QUINTIC,
    P7_EXAMPLE_CURVE,
    P7_EXAMPLE_ELIMINANT,
    P7_H71,
    P7_U0,
)


@pytest.fixture
def uv():
    return polynomial_ring(("u", "v"), 5)


class TestTriangularCount:
    def test_conjugate_pair(self, uv):
        system = [parse("u^2 - 2", uv), parse("v - u", uv)]
        result = triangular_count(system, ("v", "u"), with_solutions=True)
        assert result.distinct == 2
        assert result.with_multiplicity == 2
        assert len(result.representatives) == 1
        assert result.representatives[0][0].degree == 2
        assert len(result.solutions) == 2
        assert result.eliminant == upoly_from_ints(5, (3, 0, 1))

    def test_rational_points(self, uv):
        system = [parse("u^2 - 1", uv), parse("v^2 - u", uv)]
        result = triangular_count(system, ("v", "u"), with_solutions=True)
        # u = 1 gives v = 1, 4; u = 4 = 2^2 gives v = 2, 3
        assert result.distinct == 4
        assert all(s.degree == 1 for s in result.solutions)

    def test_multiplicity(self, uv):
        result = triangular_count([parse("(u - 1)^2 (u + 1)", uv)], ("u",))
        assert result.distinct == 2
        assert result.with_multiplicity == 3

    def test_unconstrained_coordinate(self, uv):
        with pytest.raises(PositiveDimensional):
            triangular_count([parse("u - 1", uv)], ("v", "u"))

    def test_empty_system(self, uv):
        with pytest.raises(PositiveDimensional):
            triangular_count([uv.zero], ("u",))

    def test_orbit(self, uv):
        result = triangular_count([parse("u^3 + u + 1", uv)], ("u",))
        [(solution, mult)] = result.representatives
        assert mult == 1
        assert len(solution_orbit(solution)) == 3
        assert result.to_json()["e_p"] == 3


class TestP3:
    def test_unique_connection(self, rng):
        for _ in range(5):
            a = random_curve_coefficients(3, rng)
            result = count_p3(Curve.numeric(3, a))
            assert result.distinct == 1
            assert [int(v) for v in result.solutions[0].values] == [a[2], 0, 0]

    def test_total(self):
        result = count(Curve.numeric(3, (0, 0, 0, 1, 0)))
        assert result.total == 16
        data = result.to_json(total=True, solutions=True)
        assert data["total"] == 16
        assert data["solutions"][0]["values"] == ["0", "0", "0"]

    def test_wrong_characteristic(self):
        with pytest.raises(UnsupportedP):
            count_p3(Curve.numeric(5, (0, 0, 0, 1, 1)))


class TestP5:
    def test_quintic_golden(self, golden):
        assert monic(quintic_p5(Curve.symbolic(5))) == monic(golden(5, P5_QUINTIC))

    def test_x2_coefficient_vanishes(self):
        assert p5_reduction(Curve.symbolic(5)).x2_vanishes

    def test_five_connections(self, rng):
        tested = 0
        while tested < 5:
            result = count_p5(random_curve(5, rng))
            if result.with_multiplicity != result.distinct:
                continue
            tested += 1
            assert result.distinct == 5
            assert result.cross_check == 5
            assert result.method == "quintic"

    def test_count_never_exceeds_five(self, rng):
        for _ in range(5):
            assert count_p5(random_curve(5, rng)).distinct <= 5


@pytest.mark.slow
class TestP7:
    def test_system_golden(self, golden):
        system = system_p7(Curve.symbolic(7))
        assert system.u0 == golden(7, P7_U0)
        assert system.h71 == golden(7, P7_H71)
        assert system.x4_is_multiple
        assert system.x3_is_multiple

    def test_example_curve(self):
        result = count_p7(Curve.numeric(7, P7_EXAMPLE_CURVE), strict=True)
        assert result.eliminant == upoly_from_ints(7, P7_EXAMPLE_ELIMINANT).monic()
        assert result.distinct == 14
        assert len(result.representatives) == 1
        assert result.pipeline_applicable
        assert result.unknowns == ("u0", "u1", "u2")

    def test_example_h71(self):
        curve = Curve.numeric(7, P7_EXAMPLE_CURVE)
        h71 = system_p7(curve).h71
        assert h71 == parse("5 + 6 u1^2 + 6 u2^4", curve.ring)


def test_count_dispatch(rng):
    with pytest.raises(UnsupportedP):
        count(random_curve(11, rng))
    with pytest.raises(DegenerateInput):
        count(Curve.symbolic(3))
