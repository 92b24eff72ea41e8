import random
from fractions import Fraction as F

import pytest

from hesslab import (
    IsolatingInterval,
    OuterOvalParams,
    UnivariatePolynomial,
    cauchy_bound,
    isolate_roots,
    rational_roots,
    refine_root,
    shifted_alpha_beta,
    sign_at_root,
    sturm_count,
)
from helpers import random_fraction, random_unipoly

U = UnivariatePolynomial


def contains_sqrt(iv: IsolatingInterval, square: F) -> bool:
    """Whether the positive square root of `square` lies in (lo, hi]."""
    if iv.hi <= 0:
        return False
    lo_ok = iv.lo < 0 or iv.lo * iv.lo < square
    return lo_ok and iv.hi * iv.hi >= square


class TestSturmCount:
    def test_two_roots(self):
        assert sturm_count(U([-1, 0, 1]), -2, 2) == 2

    def test_positive_root_of_radial_profile(self):
        # 2x^2 - 5 is the inner radial factor of the (1, 2) circle instance.
        assert sturm_count(U([-5, 0, 2]), 0, None) == 1

    def test_squarefree_reduction(self):
        p = U([-1, 0, 1])
        assert sturm_count(p * p, -2, 2) == 2

    def test_half_open_convention(self):
        p = U([-1, 0, 1])  # roots at -1, 1
        assert sturm_count(p, -1, 1) == 1
        assert sturm_count(p, -2, -1) == 1
        assert sturm_count(p, 1, 2) == 0

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            sturm_count(U.zero())

    def test_constant_has_no_roots(self):
        assert sturm_count(U([3])) == 0

    def test_cauchy_bound_encloses(self):
        p = U.from_roots([5, -7, F(1, 3)])
        b = cauchy_bound(p)
        assert b > 7
        assert sturm_count(p, -b, b) == 3


class TestIsolateRoots:
    def test_sqrt_two(self):
        ivs = isolate_roots(U([-2, 0, 1]))
        assert len(ivs) == 2
        assert -2 < ivs[0].lo < ivs[0].hi < -1
        assert 1 < ivs[1].lo < ivs[1].hi < 2

    def test_radial_profile_contains_root(self):
        ivs = isolate_roots(U([-5, 0, 6]))  # roots +-sqrt(5/6), 0.9128...
        positive = [iv for iv in ivs if iv.hi > 0]
        assert len(positive) == 1
        assert contains_sqrt(positive[0], F(5, 6))

    def test_constant(self):
        assert isolate_roots(U([3])) == []

    def test_known_rational_roots_recovered(self):
        rng = random.Random(5)
        for _ in range(10):
            roots = sorted(
                {random_fraction(rng, -6, 6, 4) for _ in range(rng.randint(1, 5))}
            )
            p = U.from_roots(roots)
            ivs = isolate_roots(p)
            assert len(ivs) == len(roots)
            for iv, r in zip(ivs, roots):
                assert iv.contains(r)

    def test_count_matches_isolation(self):
        rng = random.Random(77)
        for _ in range(50):
            p = random_unipoly(rng, max_degree=10)
            if p.degree <= 0:
                continue
            assert sturm_count(p) == len(isolate_roots(p))

    def test_multiplicity_flag(self):
        p = U.from_roots([1, 1, 2])
        ivs = isolate_roots(p)
        assert [iv.multiplicity_one for iv in ivs] == [False, True]


class TestRefineRoot:
    def test_sqrt_two_to_width(self):
        iv = refine_root(U([-2, 0, 1]), IsolatingInterval(1, 2), F(1, 1024))
        assert iv.width <= F(1, 1024)
        assert contains_sqrt(iv, F(2))

    def test_rational_target(self):
        iv = refine_root(U([F(-1, 3), 1]), IsolatingInterval(0, 1), F(1, 8))
        assert iv.contains(F(1, 3))

    def test_alpha_roots_refined(self):
        ab = shifted_alpha_beta(OuterOvalParams(1, -1, (F(-1),), (F(1),)))
        ivs = isolate_roots(ab.alpha)
        assert len(ivs) == 4
        for iv in ivs:
            fine = refine_root(ab.alpha, iv, F(1, 2 ** 10))
            assert fine.width <= F(1, 2 ** 10)
            assert fine.lo >= iv.lo and fine.hi <= iv.hi

    def test_sign_change_preserved(self):
        rng = random.Random(13)
        for _ in range(20):
            roots = sorted(
                {random_fraction(rng, -6, 6, 4) for _ in range(rng.randint(1, 4))}
            )
            p = U.from_roots(roots)
            for iv in isolate_roots(p):
                fine = refine_root(p, iv, F(1, 64))
                assert p(fine.lo) * p(fine.hi) < 0

    def test_even_multiplicity_falls_back_to_squarefree(self):
        p = U.from_roots([1, 1, 2])
        iv = [w for w in isolate_roots(p) if w.contains(1)][0]
        fine = refine_root(p, iv, F(1, 64))
        assert fine.contains(1)
        assert fine.width <= F(1, 64)

    def test_bad_interval_rejected(self):
        with pytest.raises(ValueError):
            refine_root(U([-2, 0, 1]), IsolatingInterval(3, 4), F(1, 4))


class TestSignAtRoot:
    def test_zero_detection(self):
        p = U([-2, 0, 1])  # root sqrt(2)
        iv = isolate_roots(p)[1]
        # q shares that root exactly.
        assert sign_at_root(p * U([1, 1]), p, iv) == 0

    def test_strict_signs(self):
        p = U([-2, 0, 1])
        iv = [w for w in isolate_roots(p) if w.hi > 0][0]
        assert sign_at_root(U([-1, 1]), p, iv) == 1  # sqrt(2) - 1 > 0
        assert sign_at_root(U([-2, 1]), p, iv) == -1  # sqrt(2) - 2 < 0

    def test_polynomial_value_sign(self):
        # sign of x^2 - 3 at sqrt(2) is negative.
        p = U([-2, 0, 1])
        iv = [w for w in isolate_roots(p) if w.hi > 0][0]
        assert sign_at_root(U([-3, 0, 1]), p, iv) == -1


class TestRationalRoots:
    def test_mixed_roots(self):
        p = U.from_roots([F(1, 3), -2]) * U([-2, 0, 1])
        assert rational_roots(p) == [-2, F(1, 3)]

    def test_root_at_zero(self):
        p = U([0, 0, 1]) * U([-3, 1])
        assert rational_roots(p) == [0, 3]

    def test_interval_serialization(self):
        iv = IsolatingInterval(F(1, 3), F(2, 3))
        assert iv.to_json() == {"lo": "1/3", "hi": "2/3"}
