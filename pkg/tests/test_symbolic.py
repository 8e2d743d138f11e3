from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from betadual.symbolic import (
    MultiPoly,
    RationalFn,
    SeriesTail,
    interpolate_values,
    poly_eval,
    poly_interpolate,
)

N = MultiPoly.var("N")
a = MultiPoly.var("a")
t = MultiPoly.var("t")


def frac(n, d=1):
    return Fraction(n, d)


class TestPolyEval:
    def test_quadratic(self):
        p = N * N - N
        assert poly_eval(p, {"N": 2}) == 2

    def test_mixed_variables(self):
        # N^2 - N + t*N at N=1, t=1/2
        p = N * N - N + t * N
        assert poly_eval(p, {"N": 1, "t": frac(1, 2)}) == frac(1, 2)

    def test_zero_polynomial(self):
        assert poly_eval(MultiPoly.zero(), {}) == 0
        assert poly_eval(MultiPoly.zero(), {"N": 7}) == 0

    def test_missing_variable(self):
        with pytest.raises(ValueError, match="missing"):
            poly_eval(N * a, {"N": 1})


class TestInterpolation:
    def test_square(self):
        pts = [(1, 1), (2, 4), (3, 9)]
        assert poly_interpolate(pts, "N") == N * N

    def test_factored_quadratic(self):
        pts = [(0, 0), (1, 0), (2, 2), (3, 6)]
        assert poly_interpolate(pts, "N") == N * N - N

    def test_identity(self):
        assert poly_interpolate([(1, 1), (2, 2)], "N") == N

    def test_duplicate_abscissae(self):
        with pytest.raises(ValueError, match="duplicate"):
            poly_interpolate([(1, 1), (1, 2)], "N")

    def test_polynomial_valued(self):
        # values are polynomials in t: f(N) = N*t + 1
        xs = [frac(1), frac(2)]
        ys = [t + 1, 2 * t + 1]
        assert interpolate_values(xs, ys, "N") == N * t + 1

    @given(st.lists(st.integers(-30, 30), min_size=1, max_size=6))
    @settings(max_examples=40, deadline=None)
    def test_roundtrip_degree(self, coeffs):
        # degree-(d) polynomial is recovered exactly from d+1 samples
        p = MultiPoly.zero()
        for k, c in enumerate(coeffs):
            p = p + MultiPoly.const(c) * N ** k
        xs = [Fraction(i) for i in range(len(coeffs))]
        pts = [(x, poly_eval(p, {"N": x})) for x in xs]
        assert poly_interpolate(pts, "N") == p


polys = st.builds(
    lambda terms: MultiPoly(
        {(e1, e2, 0, e3, 0): Fraction(c) for (e1, e2, e3), c in terms.items()}
    ),
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2)),
        st.integers(-9, 9),
        max_size=5,
    ),
)


class TestRingAxioms:
    @given(polys, polys, polys)
    @settings(max_examples=60, deadline=None)
    def test_associativity_distributivity(self, p, q, r):
        assert (p * q) * r == p * (q * r)
        assert (p + q) + r == p + (q + r)
        assert p * (q + r) == p * q + p * r

    @given(polys, polys)
    @settings(max_examples=60, deadline=None)
    def test_commutativity(self, p, q):
        assert p * q == q * p
        assert p + q == q + p

    @given(polys)
    @settings(max_examples=30, deadline=None)
    def test_units(self, p):
        assert p + MultiPoly.zero() == p
        assert p * MultiPoly.const(1) == p
        assert p - p == MultiPoly.zero()


class TestExactDivision:
    def test_divides(self):
        p = (N + 1) * (N * a - 2)
        assert p.exact_div(N + 1) == N * a - 2

    def test_not_divisible(self):
        assert (N * N + 1).exact_div(N + 1) is None

    @given(polys, polys)
    @settings(max_examples=60, deadline=None)
    def test_product_division(self, p, q):
        if q.is_zero():
            return
        assert (p * q).exact_div(q) == p


class TestRationalFn:
    def test_cancellation(self):
        r = RationalFn((N + 1) * (N - 1), N + 1)
        assert r.is_polynomial()
        assert r.as_poly() == N - 1

    def test_cross_multiplied_equality(self):
        r1 = RationalFn(N, N + 1)
        r2 = RationalFn(N * a, (N + 1) * a)
        assert r1 == r2

    def test_equality_iff_cross_product_vanishes(self):
        r1 = RationalFn(N, N + 1)
        r2 = RationalFn(N + 1, N + 2)
        lhs = r1.num * r2.denominator - r2.num * r1.denominator
        assert (r1 == r2) == lhs.is_zero()
        assert r1 != r2

    def test_add_common_denominator(self):
        r = RationalFn(1, N) + RationalFn(1, N)
        assert r == RationalFn(2, N)

    def test_sum_over_lcd(self):
        r = RationalFn(1, N) + RationalFn(1, N + 1)
        assert r == RationalFn(2 * N + 1, N * (N + 1))

    def test_inverse_and_division(self):
        r = RationalFn(N * a, N + 1)
        assert r * r.inverse() == RationalFn.const(1)
        assert (r / r) == RationalFn.const(1)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RationalFn(N, MultiPoly.zero())

    def test_eval_pole(self):
        r = RationalFn(1, N - 1)
        assert r.eval({"N": 3}) == frac(1, 2)
        with pytest.raises(ZeroDivisionError):
            r.eval({"N": 1})

    def test_substitution(self):
        r = RationalFn(N, N + 1)
        s = r.subs({"N": RationalFn(-N)})
        assert s == RationalFn(-N, 1 - N)

    @given(polys, polys, polys)
    @settings(max_examples=40, deadline=None)
    def test_equivalence_relation(self, p, q, r):
        # a/b == (a*c)/(b*c) for nonzero b, c
        if q.is_zero() or r.is_zero():
            return
        r1 = RationalFn(p, q)
        r2 = RationalFn(p * r, {})
        r2 = r2 * RationalFn(1, q) * RationalFn(r, {}).inverse() * RationalFn(r, {})
        assert r1 == RationalFn(p * r, q * r)
        assert r1 == r1


class TestSeriesTail:
    def test_monomial_product(self):
        s = SeriesTail([RationalFn(N), RationalFn.const(0)])
        prod = s * s
        assert prod.coeff(1) == RationalFn(N * N)
        assert prod.coeff(0) == RationalFn.const(0)

    def test_derivative_power_rule(self):
        # d/dx (N/x) = -N/x^2
        s = SeriesTail([RationalFn(N)])
        d = s.deriv()
        assert d.coeff(0) == RationalFn.const(0)
        assert d.coeff(1) == RationalFn(-N)

    def test_two_term_square(self):
        # First two terms of the Hermite log-derivative expansion:
        # N/x + (N^2-N)/(2x^3); square reproduces N^2/x^2 and N(N^2-N)/x^4.
        m2 = RationalFn((N * N - N) * frac(1, 2))
        s = SeriesTail([RationalFn(N), RationalFn.const(0), m2])
        sq = s * s
        assert sq.coeff(1) == RationalFn(N * N)
        assert sq.coeff(3) == RationalFn(N * (N * N - N))

    def test_order_tracking(self):
        s3 = SeriesTail([RationalFn.const(1)] * 4)
        s5 = SeriesTail([RationalFn.const(1)] * 6)
        assert (s3 + s5).order == 3
        assert (s3 * s5).order == 4
        assert s3.deriv().order == 4
        assert s3.mul_inv_x().order == 4

    def test_mul_x_head_and_underflow(self):
        s = SeriesTail([RationalFn(N), RationalFn(a)])
        head, tail = s.mul_x()
        assert head == RationalFn(N)
        assert tail.order == 0 and tail.coeff(0) == RationalFn(a)
        with pytest.raises(ValueError, match="underflow"):
            tail.mul_x()

    def test_coeff_out_of_range(self):
        s = SeriesTail([RationalFn(N)])
        with pytest.raises(IndexError):
            s.coeff(1)


class TestSerialization:
    def test_multipoly_json(self):
        p = N * t * 2 - 3
        data = p.to_json()
        assert data == [
            {"exponents": [0, 0, 0, 0, 0], "num": "-3", "den": "1"},
            {"exponents": [1, 0, 0, 1, 0], "num": "2", "den": "1"},
        ]

    def test_rationalfn_json_fields(self):
        r = RationalFn(N, N + 1)
        data = r.to_json()
        assert set(data) == {"num", "den"}
