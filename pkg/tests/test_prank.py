import pytest

from pcurvature.curve import Curve
from pcurvature.exceptions import DegenerateInput, SingularCurve
from pcurvature.polyring import monic, parse
from pcurvature.prank import (
    PRank,
    classify_prank,
    g_p_remainder,
    h_vector,
    hasse_witt_prank,
    line_bundle_count,
    line_bundle_direct,
    line_bundle_pcurvature,
    prank_report,
    prank_strata,
)
from pcurvature.verify import rank1_witnesses


def smooth_curves(p):
    for n in range(p**5):
        a = tuple((n // p**k) % p for k in range(5))
        try:
            yield Curve.numeric(p, a, params=())
        except SingularCurve:
            continue


class TestHVector:
    def test_p3(self, golden):
        h = h_vector(Curve.symbolic(3))
        expected = [golden(3, text) for text in ("-a4", "a3", "-a1", "1")]
        assert list(h.as_tuple()) == expected

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_g_p_has_four_terms(self, p):
        assert not g_p_remainder(Curve.symbolic(p, params=()))

    def test_ints(self):
        assert h_vector(Curve.numeric(3, (0, 0, 0, 1, 0))).ints() == (2, 0, 0, 1)


class TestClassify:
    @pytest.mark.parametrize(
        "h, expected",
        [
            ((1, 0, 0, 1), PRank.TWO),
            ((0, 1, 0, 1), PRank.ONE),
            ((0, 0, 0, 0), PRank.ZERO),
            ((0, 0, 0, 1), PRank.ZERO),
        ],
    )
    def test_from_ints(self, h, expected):
        assert classify_prank(h, 3) == expected

    def test_known_curves(self):
        ordinary = Curve.numeric(3, (0, 0, 0, 1, 0), params=())
        supersingular = Curve.numeric(3, (0, 0, 0, 0, 1), params=())
        assert classify_prank(h_vector(ordinary), 3) == PRank.TWO
        assert hasse_witt_prank(ordinary) == PRank.TWO
        assert classify_prank(h_vector(supersingular), 3) == PRank.ZERO
        assert hasse_witt_prank(supersingular) == PRank.ZERO

    def test_x5_minus_x_over_f5(self):
        curve = Curve.numeric(5, (0, 0, 0, 4, 0), params=())
        assert hasse_witt_prank(curve) == PRank.ZERO
        assert classify_prank(h_vector(curve), 5) == PRank.ZERO

    def test_agrees_with_hasse_witt_for_every_curve_over_f3(self):
        seen = set()
        for curve in smooth_curves(3):
            rank = hasse_witt_prank(curve)
            assert classify_prank(h_vector(curve), 3) == rank, curve.label()
            seen.add(rank)
        assert seen == {PRank.ZERO, PRank.ONE, PRank.TWO}

    def test_oracle_rejects_symbolic_and_nodal(self):
        with pytest.raises(DegenerateInput):
            hasse_witt_prank(Curve.symbolic(3))
        with pytest.raises(SingularCurve):
            hasse_witt_prank(Curve.numeric(5, (0, 3, 0, 1, 0), nodal=True))


class TestStrata:
    def test_p3(self):
        strata = prank_strata(3)
        assert set(strata) == {"rank2", "rank1_a", "rank1_b"}
        R = strata["rank2"]["poly"].ring
        assert strata["rank2"]["monic"] == monic(parse("a4 - a1 a3", R))
        assert strata["rank1_a"]["monic"] == monic(parse("a1^3 + a3", R))
        assert strata["rank1_a"]["monic"] != monic(parse("a1^3 - a3", R))

    def test_p3_rank1_sign_is_confirmed_by_hasse_witt(self):
        # a1^3 = a3 and a4 = a1 a3: a1^3 - a3 vanishes, a1^3 + a3 = 2 a1^3 does not
        curve = Curve.numeric(3, (1, 0, 1, 1, 1), params=())
        assert hasse_witt_prank(curve) == PRank.ONE
        assert classify_prank(h_vector(curve), 3) == PRank.ONE

    def test_p3_rank1_witnesses(self):
        curves = [(3, c.coefficients) for c in smooth_curves(3)]
        witnesses = rank1_witnesses(curves)
        assert (1, 0, 1, 1, 1) in witnesses
        for a in witnesses:
            assert classify_prank(h_vector(Curve.numeric(3, a, params=())), 3) == PRank.ONE

    def test_p5_rank2_condition(self):
        strata = prank_strata(5)
        R = strata["rank2"]["poly"].ring
        expected = "a1 (a3 a4 + a2 a5) - (4 a1^2 + 3 a2) (a3^2 + 2 a2 a4 + 2 a1 a5)"
        assert strata["rank2"]["monic"] == monic(parse(expected, R))

    def test_text_is_rendered(self):
        for entry in prank_strata(3).values():
            assert isinstance(entry["text"], str)


class TestLineBundles:
    @pytest.mark.parametrize(
        "p, a", [(3, (0, 0, 0, 1, 0)), (5, (0, 0, 0, 1, 1)), (7, (0, 0, 0, 1, 3))]
    )
    def test_system_matches_rank1_formula(self, p, a):
        curve = Curve.numeric(p, a, params=("c1", "c2"))
        c1, c2 = curve.param_gens
        f0, fp = line_bundle_pcurvature(curve, p, c1, c2)
        assert line_bundle_direct(curve, c1, c2) == f0 + fp * curve.x**p

    @pytest.mark.parametrize(
        "a, expected",
        [((0, 0, 0, 1, 0), 9), ((0, 0, 0, 0, 1), 1)],
    )
    def test_count_is_p_to_the_rank(self, a, expected):
        assert line_bundle_count(3, a) == expected

    def test_count_over_a_sample_of_curves(self):
        for curve in list(smooth_curves(3))[::17]:
            rank = hasse_witt_prank(curve)
            assert line_bundle_count(3, curve.coefficients) == 3 ** int(rank)


def test_report():
    report = prank_report(3, (0, 0, 0, 1, 0)).to_json()
    assert report == {
        "p": 3,
        "curve": [0, 0, 0, 1, 0],
        "prank": 2,
        "h": [2, 0, 0, 1],
        "oracle": 2,
        "agree": True,
    }
