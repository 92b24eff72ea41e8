import random

import pytest

from hesslab import (
    BivariatePolynomial,
    PlaneRationalFunction,
    build_odd_circles,
    hessian_poly,
    hessian_rational,
    OddCircleParams,
    radial_odd,
    rational_reduce,
)
from helpers import random_fraction, random_poly

X = BivariatePolynomial.x()
Y = BivariatePolynomial.y()
W = X ** 2 + Y ** 2


class TestReduction:
    def test_shared_listed_factor(self):
        wp1 = W + 1
        f = PlaneRationalFunction((W - 1) * wp1, wp1 * wp1, known_factors=(wp1,))
        g = rational_reduce(f)
        assert g.num == W - 1
        assert g.den == wp1

    def test_content(self):
        f = PlaneRationalFunction(2 * X, BivariatePolynomial.constant(2))
        g = rational_reduce(f)
        assert g.num == X
        assert g.den == BivariatePolynomial.constant(1)

    def test_known_linear_factor(self):
        f = PlaneRationalFunction(X ** 2 - 1, X + 1, known_factors=(X + 1,))
        g = rational_reduce(f)
        assert g.num == X - 1
        assert g.den == BivariatePolynomial.constant(1)
        # Value unchanged away from the vanishing set.
        rng = random.Random(3)
        for _ in range(5):
            pt = (random_fraction(rng), random_fraction(rng))
            if (X + 1).evaluate(*pt) == 0:
                continue
            assert f.evaluate(*pt) == g.evaluate(*pt)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            PlaneRationalFunction(X, BivariatePolynomial.zero())

    def test_denominator_normalized_positive(self):
        f = PlaneRationalFunction(X, BivariatePolynomial.constant(-2) * (W + 1))
        _, lead = f.den.leading_term()
        assert lead > 0


class TestHessianRational:
    def test_single_circle_quotient(self):
        # f = (x^2+y^2-1)/(x^2+y^2+1): Hess f = (16 - 48(x^2+y^2)) / (x^2+y^2+1)^5.
        f = build_odd_circles(OddCircleParams(1))
        h = hessian_rational(f)
        assert h.num == 16 - 48 * W
        assert h.den == (W + 1) ** 5
        # Cross-check the origin value against direct second derivatives.
        assert h.evaluate(0, 0) == 16

    def test_polynomial_degenerate_quotient(self):
        rng = random.Random(19)
        for _ in range(20):
            p = random_poly(rng, max_degree=4)
            f = PlaneRationalFunction.from_polynomial(p)
            h = hessian_rational(f)
            assert h.num == hessian_poly(p)
            assert h.den == BivariatePolynomial.constant(1)

    def test_odd_family_factorization_n2(self):
        params = OddCircleParams(2)
        pair = radial_odd(params)  # raises on identity failure
        s2, t2 = pair.lift()
        h = hessian_rational(build_odd_circles(params))
        lhs = h.num * (W + 1) ** 7
        rhs = 4 * s2 * t2 * h.den
        assert lhs == rhs
