import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcurvature.exceptions import DegenerateInput, ZeroPolynomial
from pcurvature.polyring import (
    UPoly,
    VarSet,
    coefficient_list,
    count_distinct_roots_closure,
    degree_in,
    diff,
    evaluate,
    irreducible_factors,
    monic,
    parse,
    polynomial_ring,
    render,
    resultant,
    roots_in_ext,
    solve_linear,
    specialize,
    squarefree_decomposition,
    substitute,
    total_degree_in,
    upoly_gcd,
)
from pcurvature.polyring.multivariate import characteristic
from pcurvature.polyring.univariate import field_embedding, find_root, upoly_from_ints
from pcurvature.prime_field import ext_field, prime_field

F7 = prime_field(7)
coefficient_lists = st.lists(st.integers(0, 6), min_size=1, max_size=8)


def poly(*coeffs, p=7):
    return upoly_from_ints(p, coeffs)


def product(factors):
    result = UPoly.one(factors[0][0].field)
    for g, m in factors:
        result = result * g**m
    return result


def random_mpoly(ring, rng, monomials):
    p = characteristic(ring.one)
    f = ring.zero
    for exponents in monomials:
        term = ring(rng.randrange(p))
        for x_j, e in zip(ring.gens, exponents):
            term *= x_j**e
        f += term
    return f


class TestUPoly:
    def test_trailing_zeros_are_dropped(self):
        assert poly(1, 2, 0, 0).degree == 1
        assert poly(0, 0).is_zero

    def test_division(self):
        f = poly(1, 0, 0, 1)  # t^3 + 1
        q, r = divmod(f, poly(1, 1))
        assert r.is_zero
        assert q == poly(1, 6, 1)

    def test_gcd_is_monic(self):
        f = poly(6, 0, 1)  # (t - 1)(t + 1)
        g = poly(2, 2)  # 2 (t + 1)
        assert upoly_gcd(f, g) == poly(1, 1)

    def test_evaluation_in_extension(self):
        F49 = ext_field(7, 2)
        assert poly(1, 0, 1)(F49.gen).is_zero

    def test_render(self):
        assert poly(3, 0, 1).render() == "t^2 + 3"

    @given(coefficient_lists, coefficient_lists)
    def test_divmod_identity(self, a, b):
        f, g = upoly_from_ints(7, a), upoly_from_ints(7, b)
        if g.is_zero:
            return
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.degree < g.degree

    @given(coefficient_lists)
    def test_factorization_multiplies_back(self, a):
        f = upoly_from_ints(7, a)
        if f.degree < 1:
            return
        assert product(irreducible_factors(f)) == f.monic()


class TestSquarefree:
    def test_repeated_root(self):
        f = poly(6, 1) ** 2 * poly(1, 1)  # (t - 1)^2 (t + 1)
        assert sorted((g.ints(), m) for g, m in squarefree_decomposition(f)) == [
            ([1, 1], 1),
            ([6, 1], 2),
        ]
        assert count_distinct_roots_closure(f) == 2

    def test_inseparable(self):
        f = poly(6, *([0] * 6), 1)  # t^7 - 1 = (t - 1)^7
        assert count_distinct_roots_closure(f) == 1

    def test_artin_schreier(self):
        f = poly(0, 6, *([0] * 5), 1)  # t^7 - t
        assert count_distinct_roots_closure(f) == 7

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            squarefree_decomposition(poly(0))

    def test_over_extension_field(self):
        F = ext_field(3, 2)
        t = UPoly.t(F)
        a = UPoly(F, [F.gen])
        f = (t - a) ** 3 * (t + UPoly.one(F))
        decomposition = squarefree_decomposition(f)
        assert sorted(m for _, m in decomposition) == [1, 3]


class TestRoots:
    def test_roots_of_irreducible_quadratic(self):
        roots = roots_in_ext(poly(1, 0, 1))
        assert len(roots) == 2
        for root, m in roots:
            assert m == 1
            assert root * root + 1 == root.field.zero

    def test_find_root_after_embedding(self):
        F9 = ext_field(3, 2)
        F81 = ext_field(3, 4)
        embed = field_embedding(F9, F81)
        image = embed(F9.gen)
        assert image * image + 1 == F81.zero
        assert embed(F9.gen + 1) == image + 1

    def test_find_root(self):
        F49 = ext_field(7, 2)
        f = UPoly(F49, [1, 0, 1])
        root = find_root(f)
        assert f(root).is_zero

    def test_multiplicities_add_up_to_degree(self, rng):
        for _ in range(100):
            p = rng.choice((3, 5, 7))
            degree = rng.randint(1, 8)
            coeffs = [rng.randrange(p) for _ in range(degree)] + [rng.randrange(1, p)]
            f = upoly_from_ints(p, coeffs)
            roots = roots_in_ext(f)
            assert sum(m for _, m in roots) == degree
            for root, _ in roots:
                assert f(root).is_zero


R = polynomial_ring(("a", "b", "x"), 7)
a, b, x = R.gens


class TestMPoly:
    def test_varset_rejects_duplicates(self):
        with pytest.raises(DegenerateInput):
            VarSet(("a", "a"))

    def test_varset_ring(self):
        assert VarSet(("a", "b", "x")).ring(7) is R

    def test_parse_and_render(self):
        f = parse("3 a^2 + b - 1", R)
        assert f == 3 * a**2 + b - 1
        assert render(f) == "3*a^2 + b + 6"

    def test_monic(self):
        assert monic(3 * a**2 + b) == a**2 + 5 * b

    def test_coefficients_by_variable(self):
        f = a * x**2 + b
        assert coefficient_list(f, 2) == [b, R.zero, a]
        assert degree_in(f, 2) == 2
        assert total_degree_in(f, (0, 1)) == 1

    def test_diff(self):
        assert diff(x**7 + a * x**2, 2) == 2 * a * x

    def test_substitute(self):
        assert substitute(a * x + b, 0, b + 1) == b * x + x + b

    def test_solve_linear(self):
        assert solve_linear(2 * a + b * x, 0) == 3 * b * x
        with pytest.raises(DegenerateInput):
            solve_linear(x * a + b, 0)

    def test_resultant_of_linear_factors(self):
        assert resultant(x - a, x - b, 2) == a - b

    def test_resultant_detects_common_root(self):
        f = (x - a) * (x + 1)
        g = (x - a) * (x - b)
        assert not resultant(f, g, 2)

    def test_resultant_with_constant(self):
        assert resultant(a + 1, x**2 + b, 2) == (a + 1) ** 2

    def test_resultant_vanishes_iff_common_root(self, rng):
        F25 = ext_field(5, 2)
        S = polynomial_ring(("t",), 5)
        for _ in range(30):
            # degree at most 2, so every root lies in F_25
            f = random_mpoly(S, rng, [(k,) for k in range(3)])
            g = random_mpoly(S, rng, [(k,) for k in range(3)])
            if degree_in(f, 0) < 1 or degree_in(g, 0) < 1:
                continue
            common = [
                r
                for r in F25.elements()
                if evaluate(f, {0: r}, F25).is_zero and evaluate(g, {0: r}, F25).is_zero
            ]
            assert (not resultant(f, g, 0)) == bool(common), (f, g)

    def test_resultant_vanishes_at_common_roots(self, rng):
        F5, F25 = prime_field(5), ext_field(5, 2)
        S = polynomial_ring(("s", "t"), 5)
        monomials = [(i, j) for i in range(3) for j in range(3) if i + j <= 2]
        checked = 0
        for _ in range(10):
            point = {0: F5(rng.randrange(5)), 1: F5(rng.randrange(5))}
            f = random_mpoly(S, rng, monomials)
            g = random_mpoly(S, rng, monomials)
            f -= evaluate(f, point, F5).value
            g -= evaluate(g, point, F5).value
            if degree_in(f, 1) < 1 or degree_in(g, 1) < 1:
                continue
            r = resultant(f, g, 1)
            assert degree_in(r, 1) == 0
            for s0, t0 in itertools.product(list(F25.elements()), repeat=2):
                values = {0: s0, 1: t0}
                if evaluate(f, values, F25).is_zero and evaluate(g, values, F25).is_zero:
                    assert evaluate(r, {0: s0}, F25).is_zero
                    checked += 1
        assert checked

    def test_resultant_of_zero(self):
        with pytest.raises(DegenerateInput):
            resultant(R.zero, x, 2)

    def test_specialize_at_extension_point(self):
        F49 = ext_field(7, 2)
        u = specialize(a * x**2 + b, {0: F49.gen, 1: F49(3)}, 2, F49)
        assert u.coeffs == (F49(3), F49.zero, F49.gen)

    def test_evaluate(self):
        F49 = ext_field(7, 2)
        t = F49.gen
        assert evaluate(a**2 + 1, {0: t}, F49).is_zero
        with pytest.raises(DegenerateInput):
            evaluate(a + b, {0: t}, F49)
