from fractions import Fraction as F

import pytest

from frechetlab.errors import (DimensionMismatchError,
                               InconsistentDecompositionError)
from frechetlab.interp import GridSpec, build_interpolant
from frechetlab.parsing import parse_poly
from frechetlab.poly import TensorPoly, UniPoly, poly_equal
from frechetlab.scalars import QuadScalar
from frechetlab.shear import (ShearDecomposition, bivariate_jacobian,
                              find_strict_decomposition, forbidden_alphas,
                              shear_decompose, slice_polynomial,
                              sqrt_in_field, xi_determinant)
from frechetlab.witness import Ordinary, Product, SectionSpec, Sum, SurdPart

R2 = QuadScalar.sqrt_d(2)


class TestShearDecompose:
    def test_xy(self):
        D = shear_decompose(parse_poly("x*y", 2))
        assert [a.to_text() for a in D.coefficients] == ["0", "t", "-1"]
        assert D.leading_index == 2

    def test_function_of_x_plus_y(self):
        D = shear_decompose(parse_poly("(x+y)^3", 2, 2).widen(3))
        assert D.leading_index == 0
        assert D.coefficients[0] == UniPoly([0, 0, 0, 1])

    def test_x2y2(self):
        D = shear_decompose(parse_poly("x^2*y^2", 2))
        nonzero = {i: a.to_text() for i, a in enumerate(D.coefficients)
                   if not a.is_zero()}
        assert nonzero == {2: "t^2", 3: "-2*t", 4: "1"}
        assert D.leading_index == 4

    def test_zero_polynomial(self):
        D = shear_decompose(TensorPoly.zero(2, 1))
        assert D.leading_index == -1

    def test_round_trip_and_degree_bound(self, rng):
        for _ in range(50):
            m = rng.int_range(1, 6)
            P = rng.tensor_poly(2, m)
            D = shear_decompose(P)
            assert poly_equal(D.recompose(), P)
            assert all(a.degree <= m for a in D.coefficients)

    def test_needs_two_variables(self):
        with pytest.raises(DimensionMismatchError):
            shear_decompose(TensorPoly.variable(3, 1))


class TestSlicePolynomial:
    def test_examples(self):
        D = shear_decompose(parse_poly("x*y", 2))
        assert slice_polynomial(D, 3) == UniPoly([0, 3, -1])

        D3 = shear_decompose(parse_poly("(x+y)^3", 2, 2).widen(3))
        assert slice_polynomial(D3, 5) == UniPoly([125])

        W = shear_decompose(parse_poly("1/2*sqrt(2)*t1", 2).widen(1))
        assert W.leading_index == 1
        mslice = slice_polynomial(W, 9)
        assert mslice == UniPoly([0, QuadScalar(0, F(1, 2))])
        assert mslice.degree == 1  # nonconstant: unbounded vertical section

    def test_slice_consistency_with_direct_restriction(self, rng):
        for _ in range(25):
            P = rng.tensor_poly(2, rng.int_range(1, 4))
            D = shear_decompose(P)
            alpha, x = rng.quad(), rng.quad()
            assert slice_polynomial(D, alpha).eval(x) == P.eval([x, alpha - x])


class TestForbiddenAlphas:
    def test_linear(self):
        D = ShearDecomposition(1, (UniPoly([0]), UniPoly([-1, 1])))
        assert forbidden_alphas(D) == [QuadScalar(1)]

    def test_quadratic_with_field_roots(self):
        D = ShearDecomposition(2, (UniPoly([-2, 0, 1]),))
        assert forbidden_alphas(D) == [-R2, R2]

    def test_nonvanishing_constant(self):
        D = ShearDecomposition(1, (UniPoly([1]),))
        assert forbidden_alphas(D) == []

    def test_quadratic_with_no_field_roots(self):
        D = ShearDecomposition(2, (UniPoly([-3, 0, 1]),))  # t^2 - 3
        assert forbidden_alphas(D) == []

    def test_higher_degree_mixed_roots(self):
        # (t - 1)(t^2 - 2)(t^2 + 1): field roots are 1 and +-sqrt(2)
        A = UniPoly([-1, 1]) * UniPoly([-2, 0, 1]) * UniPoly([1, 0, 1])
        D = ShearDecomposition(5, (A,))
        assert forbidden_alphas(D) == [-R2, QuadScalar(1), R2]

    def test_surd_coefficients(self):
        # t^2 - 2*sqrt(2) t + 2 = (t - sqrt 2)^2
        A = UniPoly([2, QuadScalar(0, -2), 1])
        D = ShearDecomposition(2, (A,))
        assert forbidden_alphas(D) == [R2]

    def test_bounded_by_degree(self, rng):
        for _ in range(20):
            P = rng.tensor_poly(2, rng.int_range(1, 3))
            D = shear_decompose(P)
            if D.leading_index >= 0:
                roots = forbidden_alphas(D)
                deg = D.coefficients[D.leading_index].degree
                assert len(roots) <= max(deg, 0) <= D.m


class TestSqrtInField:
    def test_cases(self):
        assert sqrt_in_field(QuadScalar(F(9, 4))) == QuadScalar(F(3, 2))
        assert sqrt_in_field(QuadScalar(2)) == R2
        assert sqrt_in_field(QuadScalar(3)) is None
        w = sqrt_in_field(QuadScalar(3, 2))  # 3 + 2 sqrt2 = (1 + sqrt2)^2
        assert w is not None and w * w == QuadScalar(3, 2)
        assert sqrt_in_field(QuadScalar(-1)) is None
        assert sqrt_in_field(QuadScalar(0)) == QuadScalar(0)

    def test_squares_always_admit_roots(self, rng):
        for _ in range(50):
            z = rng.quad()
            w = sqrt_in_field(z * z)
            assert w is not None and w * w == z * z


class TestBivariateJacobian:
    def test_examples(self):
        P = parse_poly("x*y", 2)
        J = bivariate_jacobian(P, shear_decompose(P))
        assert J == parse_poly("x - y", 2)

        P3 = parse_poly("(x+y)^3", 2, 2).widen(3)
        assert bivariate_jacobian(P3, shear_decompose(P3)).is_zero()

        P4 = parse_poly("x^2*y^2", 2)
        assert bivariate_jacobian(P4, shear_decompose(P4)) == parse_poly(
            "2*x^2*y - 2*x*y^2", 2)

    def test_cross_check_on_random_polynomials(self, rng):
        for _ in range(30):
            P = rng.tensor_poly(2, rng.int_range(1, 5))
            D = shear_decompose(P)
            J = bivariate_jacobian(P, D)
            assert J == (P.partial(2) - P.partial(1)).shrink()

    def test_mismatched_decomposition_raises(self):
        P = parse_poly("x*y", 2)
        bad = shear_decompose(parse_poly("x*y + x", 2))
        with pytest.raises(InconsistentDecompositionError):
            bivariate_jacobian(P, bad)


class TestXiDeterminant:
    def test_examples(self):
        P = parse_poly("t2*t3", 3)
        assert xi_determinant(P, 2) == parse_poly("t2 - t3", 3)
        assert xi_determinant(parse_poly("t1^2", 3), 2).is_zero()
        W = parse_poly("1/2*sqrt(2)*t1", 2)
        assert xi_determinant(W, 1) == TensorPoly.constant(2, QuadScalar(0, F(-1, 2)))

    def test_axis_range(self):
        with pytest.raises(DimensionMismatchError):
            xi_determinant(parse_poly("t1*t2", 2), 2)


class TestLemmaThreeRestriction:
    def test_restriction_identity_for_multivariate_witness(self):
        """P(0,..,t_s,..,0,t_{n+1}) equals the bivariate section interpolant."""
        n, s, m = 2, 1, 1
        f = Sum((SurdPart(1), Ordinary(parse_poly("t2", 2))))
        a = (QuadScalar(0), QuadScalar(F(1, 2)))
        h = (R2, QuadScalar(1), QuadScalar(1))
        e1, e2 = (QuadScalar(1), QuadScalar(0)), (QuadScalar(0), QuadScalar(1))
        gamma = (e1, e2, e1)  # v_k = e_k, v_{n+1} = e_s
        grid = GridSpec(a, h, gamma, m)
        P = build_interpolant(f, grid)

        g = f.restrict(SectionSpec(s, (a[1],)))
        small = GridSpec((a[0],), (h[0], h[2]), ((1,), (1,)), m)
        p_small = build_interpolant(g, small)

        restricted = P.restrict({2: 0})  # freeze t_2 = 0, keep (t_1, t_3)
        assert poly_equal(restricted, p_small)

        # the Jacobian restriction matches the bivariate formula too
        xi = xi_determinant(P, s)
        D = shear_decompose(p_small)
        assert poly_equal(xi.restrict({2: 0}),
                          bivariate_jacobian(p_small, D))


class TestStrictSearch:
    def test_finds_strict_grid_for_surd(self):
        res = find_strict_decomposition(SurdPart(1), 1)
        assert res.found
        assert res.decomposition.leading_index >= 1
        assert res.interpolant is not None
        # the slice at any non-forbidden alpha is nonconstant
        alphas = forbidden_alphas(res.decomposition)
        alpha = QuadScalar(7)
        assert alpha not in alphas
        assert slice_polynomial(res.decomposition, alpha).degree >= 1

    def test_exhausts_on_ordinary_polynomials(self):
        # every grid of an ordinary univariate solution gives N = 0
        f = Ordinary(parse_poly("t1^2 - 3*t1", 1))
        res = find_strict_decomposition(f, 2, max_height=1, budget=200)
        assert not res.found
        assert res.tried > 0

    def test_budget_is_respected(self):
        f = Ordinary(parse_poly("t1", 1))
        res = find_strict_decomposition(f, 1, max_height=2, budget=5)
        assert not res.found and res.tried == 5
