import random

import pytest

from pcurvature.curve import (
    Curve,
    f_theta_p,
    g_k,
    is_nodal,
    is_smooth,
    random_curve,
    random_curve_coefficients,
    root_multiplicities,
    theta_apply,
    theta_iterates,
    theta_p_consistency,
    theta_power,
)
from pcurvature.exceptions import DegenerateInput, EvenIndex, SingularCurve


def random_fn(curve, rng):
    x = curve.x
    a = sum((rng.randrange(curve.p) * x**k for k in range(6)), curve.ring.zero)
    b = sum((rng.randrange(curve.p) * x**k for k in range(6)), curve.ring.zero)
    return curve.fn(a, b)


class TestCurve:
    def test_singular_curve_is_rejected(self):
        with pytest.raises(SingularCurve):
            Curve.numeric(5, (0, 0, 0, 0, 0))

    def test_nodal_mode_accepts_double_roots_only(self):
        # x^5 - x^3 = x^3 (x - 1)(x + 1) has a triple root
        with pytest.raises(SingularCurve):
            Curve.numeric(5, (0, 4, 0, 0, 0), nodal=True)
        # x^5 + 3 x^3 + x = x (x - 1)^2 (x + 1)^2 over F_5
        curve = Curve.numeric(5, (0, 3, 0, 1, 0), nodal=True)
        assert curve.nodal
        assert is_nodal(5, (0, 3, 0, 1, 0))

    def test_root_multiplicities(self):
        assert root_multiplicities(5, (0, 3, 0, 1, 0)) == [1, 2, 2]
        assert is_smooth(7, (0, 0, 0, 1, 3))

    def test_coefficients_are_reduced(self):
        curve = Curve.numeric(7, (7, 14, -7, 8, 3))
        assert curve.coefficients == (0, 0, 0, 1, 3)

    def test_wrong_number_of_coefficients(self):
        with pytest.raises(DegenerateInput):
            Curve.numeric(7, (1, 2, 3))

    def test_symbolic_ring_layout(self):
        curve = Curve.symbolic(5)
        names = [str(s) for s in curve.ring.symbols]
        assert names == ["a1", "a2", "a3", "a4", "a5", "u0", "u1", "u2", "x"]
        assert curve.param_indices == (5, 6, 7)
        assert curve.is_symbolic

    def test_from_generic_evaluates_coefficients(self, golden):
        curve = Curve.numeric(7, (0, 0, 0, 1, 3))
        f = golden(7, "a4 u1 + a5 x + u2")
        _, u1, u2 = curve.param_gens
        assert curve.from_generic(f) == u1 + 3 * curve.x + u2


class TestCurveFn:
    def test_y_squared_is_g(self):
        curve = Curve.numeric(7, (0, 0, 0, 1, 3))
        assert curve.y * curve.y == curve.fn(curve.g)

    def test_theta_of_x_is_y(self):
        curve = Curve.symbolic(5)
        assert theta_apply(curve, curve.fn(curve.x)) == curve.y

    def test_theta_of_y(self):
        curve = Curve.symbolic(5)
        assert theta_apply(curve, curve.y) == curve.fn(curve.dg * curve.inv2)

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_leibniz_rule(self, p, rng):
        for _ in range(10):
            curve = random_curve(p, rng, params=())
            f, h = random_fn(curve, rng), random_fn(curve, rng)
            lhs = theta_apply(curve, f * h)
            assert lhs == theta_apply(curve, f) * h + f * theta_apply(curve, h)

    def test_operators_return_not_implemented_for_foreign_types(self):
        curve = Curve.numeric(5, (0, 0, 0, 1, 1), params=())
        with pytest.raises(TypeError):
            curve.y + "x"

    def test_iterates(self):
        curve = Curve.numeric(5, (0, 0, 0, 1, 1), params=())
        iterates = theta_iterates(curve, curve.fn(curve.x), 3)
        assert len(iterates) == 4
        assert iterates[3] == theta_power(curve, curve.fn(curve.x), 3)


class TestFTheta:
    def test_g3(self, golden):
        assert g_k(Curve.symbolic(3), 3) == golden(3, "x^4 - a1 x^3 + a3 x - a4")

    def test_g5(self, golden):
        expected = golden(
            5, "2 a1 x^6 + (4 a1^2 + 3 a2) x^5 + (a3^2 + 2 a2 a4 + 2 a1 a5) x + 3 a3 a4 + 3 a2 a5"
        )
        assert g_k(Curve.symbolic(5), 5) == expected

    def test_even_index(self):
        with pytest.raises(EvenIndex):
            g_k(Curve.symbolic(5), 4)

    @pytest.mark.parametrize(
        "p, text",
        [
            (3, "x^3 + a3"),
            (5, "2 a1 x^5 + a3^2 + 2 a2 a4 + 2 a1 a5"),
            (
                7,
                "(3 a1^2 + 3 a2) x^7 + a3^3 + 6 a2 a3 a4 + 3 a1 a4^2 + 3 a2^2 a5"
                " + 6 a1 a3 a5 + 6 a4 a5",
            ),
        ],
    )
    def test_f_theta_p(self, p, text, golden):
        curve = Curve.symbolic(p)
        ftp = f_theta_p(curve)
        assert ftp == golden(p, text)
        assert theta_apply(curve, curve.fn(ftp)).is_zero()

    def test_f_theta_p_needs_the_characteristic(self):
        with pytest.raises(DegenerateInput):
            f_theta_p(Curve.symbolic(5), 7)

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_theta_p_on_random_functions(self, p, rng):
        curve = random_curve(p, rng, params=())
        for _ in range(5):
            assert theta_p_consistency(curve, random_fn(curve, rng))

    @pytest.mark.parametrize("p", [11, 13])
    def test_f_theta_p_is_killed_by_theta_beyond_7(self, p):
        curve = random_curve(p, random.Random(p), params=())
        ftp = f_theta_p(curve)
        assert theta_apply(curve, curve.fn(ftp)).is_zero()


def test_random_curves_are_smooth(rng):
    for _ in range(20):
        assert is_smooth(5, random_curve_coefficients(5, rng))
