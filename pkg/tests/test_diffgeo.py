import math
import random
from fractions import Fraction as F

import pytest

from hesslab import (
    INFINITE_CONTACT,
    BivariatePolynomial,
    OuterOvalParams,
    PointClass,
    QuadExt,
    asymptotic_directions,
    build_outer_oval,
    certify_special_parabolic,
    classify_point,
    contact_order,
    hessian_poly,
    second_form_at,
    taylor_jet,
)
from helpers import random_fraction, random_poly

X = BivariatePolynomial.x()
Y = BivariatePolynomial.y()


def _parallel(u, v) -> bool:
    return u[0] * v[1] - u[1] * v[0] == 0


class TestHessian:
    def test_paraboloid(self):
        assert hessian_poly(X ** 2 + Y ** 2) == BivariatePolynomial.constant(4)

    def test_saddle(self):
        assert hessian_poly(X * Y) == BivariatePolynomial.constant(-1)

    def test_factored_saddle(self):
        assert hessian_poly((Y - X) * (Y + X)) == BivariatePolynomial.constant(-4)


class TestClassification:
    def test_examples(self):
        assert classify_point(X ** 2 + Y ** 2, (0, 0)) is PointClass.ELLIPTIC
        assert classify_point(X * Y, (1, 1)) is PointClass.HYPERBOLIC
        assert classify_point(X ** 2, (F(2), F(-5))) is PointClass.PARABOLIC

    def test_sign_agreement_with_hessian(self):
        # Elliptic iff Hess f > 0 at the point, since the discriminant of the
        # second fundamental form is minus the Hessian.
        rng = random.Random(71)
        for _ in range(10):
            f = random_poly(rng, max_degree=5)
            h = hessian_poly(f)
            for _ in range(10):
                pt = (random_fraction(rng), random_fraction(rng))
                hv = h.evaluate(*pt)
                cls = classify_point(f, pt)
                if hv > 0:
                    assert cls is PointClass.ELLIPTIC
                elif hv == 0:
                    assert cls is PointClass.PARABOLIC
                else:
                    assert cls is PointClass.HYPERBOLIC


class TestAsymptoticDirections:
    def test_saddle_two(self):
        dirs = asymptotic_directions(X * Y, (0, 0))
        assert dirs.kind == "two"
        got = list(dirs.directions)
        assert any(_parallel(d, (1, 0)) for d in got)
        assert any(_parallel(d, (0, 1)) for d in got)

    def test_paraboloid_none(self):
        assert asymptotic_directions(X ** 2 + Y ** 2, (0, 0)).kind == "none"

    def test_cylinder_one(self):
        dirs = asymptotic_directions(X ** 2, (0, 0))
        assert dirs.kind == "one"
        assert _parallel(dirs.directions[0], (0, 1))

    def test_flat_point_all(self):
        dirs = asymptotic_directions(X ** 3, (0, 0))
        assert dirs.kind == "all"

    def test_kind_matches_classification(self):
        rng = random.Random(29)
        seen = {"none": 0, "one": 0, "two": 0, "all": 0}
        count = 0
        while count < 100:
            f = random_poly(rng, max_degree=4)
            pt = (random_fraction(rng), random_fraction(rng))
            try:
                cls = classify_point(f, pt)
            except ZeroDivisionError:
                continue
            count += 1
            kind = asymptotic_directions(f, pt).kind
            seen[kind] += 1
            if cls is PointClass.ELLIPTIC:
                assert kind == "none"
            elif cls is PointClass.HYPERBOLIC:
                assert kind == "two"
            else:
                assert kind in ("one", "all")
        assert seen["two"] > 0 and seen["none"] > 0


class TestContactOrder:
    def test_paraboloid(self):
        assert contact_order(X ** 2 + Y ** 2, (0, 0), (1, 0)) == 2

    def test_cusp_line(self):
        assert contact_order(Y ** 2 - X ** 3, (0, 0), (1, 0)) == 3

    def test_ruled_direction_infinite(self):
        assert contact_order(X * Y, (0, 0), (1, 0)) == INFINITE_CONTACT

    def test_zero_direction_rejected(self):
        with pytest.raises(ValueError):
            contact_order(X, (0, 0), (0, 0))

    def test_cap_rolls_to_infinite(self):
        assert contact_order(Y ** 2 - X ** 5, (0, 0), (1, 0), cap=4) == INFINITE_CONTACT

    def test_asymptotic_contact_at_hyperbolic_points(self):
        # Both asymptotic directions of a hyperbolic point are tangent to
        # order at least 3; irrational directions run in Q(sqrt(d)).
        params = OuterOvalParams(1, -1, (F(-1),), (F(1),))
        f = build_outer_oval(params)
        rng = random.Random(37)
        found = 0
        quad_ext_seen = 0
        while found < 50:
            pt = (
                F(rng.randint(-32, 32), 8),
                F(rng.randint(-32, 32), 8),
            )
            if classify_point(f, pt) is not PointClass.HYPERBOLIC:
                continue
            found += 1
            dirs = asymptotic_directions(f, pt)
            assert dirs.kind == "two"
            for d in dirs.directions:
                if isinstance(d[0], QuadExt):
                    quad_ext_seen += 1
                order = contact_order(f, pt, d)
                assert order == INFINITE_CONTACT or order >= 3
        assert quad_ext_seen > 0


class TestSecondFormAndJets:
    def test_second_form_is_exact(self):
        form = second_form_at(X ** 3 + X * Y ** 2, (F(1, 2), F(1, 3)))
        assert form.a == 3  # f_xx = 6x
        assert form.b == F(2, 3)  # f_xy = 2y
        assert form.c == 1  # f_yy = 2x

    def test_rational_jet_matches_polynomial_jet(self):
        rng = random.Random(41)
        from hesslab import PlaneRationalFunction

        for _ in range(10):
            p = random_poly(rng, max_degree=4)
            z = (random_fraction(rng, -3, 3, 3), random_fraction(rng, -3, 3, 3))
            f = PlaneRationalFunction.from_polynomial(p)
            assert taylor_jet(f, z, 4) == p.translate_jet(z, 4)

    def test_rational_jet_of_quotient(self):
        # f = 1/(1 - x): jet around 0 of x^2 + x^3 + x^4 beyond the linear part.
        from hesslab import PlaneRationalFunction

        f = PlaneRationalFunction(BivariatePolynomial.constant(1), 1 - X)
        jet = taylor_jet(f, (0, 0), 4)
        assert jet == X ** 2 + X ** 3 + X ** 4


class TestSpecialPointCertificate:
    def test_outer_instance_godron(self):
        params = OuterOvalParams(1, -1, (F(-1),), (F(1),))
        f = build_outer_oval(params)
        cert = certify_special_parabolic(f, (-1, 0))
        assert cert.verdict
        assert cert.hessian_gradient_nonzero
        assert _parallel(cert.unique_asymptotic_direction, (0, 1))
        assert cert.contact_order_ge_4
        assert cert.jet4_not_square

    def test_cylinder_fails_gradient(self):
        cert = certify_special_parabolic(X ** 2, (0, 0))
        assert not cert.verdict
        assert not cert.hessian_gradient_nonzero

    def test_quartic_valley_fails_gradient(self):
        # Hess(x^2 + y^4) = 24 y^2 has vanishing gradient at the origin.
        cert = certify_special_parabolic(X ** 2 + Y ** 4, (0, 0))
        assert not cert.verdict
        assert not cert.hessian_gradient_nonzero

    def test_non_parabolic_rejected(self):
        with pytest.raises(ValueError):
            certify_special_parabolic(X ** 2 + Y ** 2, (0, 0))

    def test_certificate_serialization(self):
        params = OuterOvalParams(1, -1, (F(-1),), (F(1),))
        f = build_outer_oval(params)
        blob = certify_special_parabolic(f, (1, 0)).to_json()
        assert blob["verdict"] is True
        assert blob["point"] == ["1", "0"]


class TestQuadExt:
    def test_arithmetic(self):
        r = QuadExt(1, 1, 2)  # 1 + sqrt(2)
        s = QuadExt(1, -1, 2)  # 1 - sqrt(2)
        assert r * s == QuadExt(-1, 0, 2)
        assert r + s == QuadExt(2, 0, 2)
        assert (r - r).is_zero
        assert r * F(1, 2) == QuadExt(F(1, 2), F(1, 2), 2)

    def test_float_view(self):
        assert math.isclose(float(QuadExt(0, 1, 2)), math.sqrt(2))
