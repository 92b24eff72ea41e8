"""Small random generators shared by the demo scripts."""

import random
from fractions import Fraction

from hesslab import AffineMap2, BivariatePolynomial


def random_fraction(rng: random.Random, lo=-9, hi=9, den=9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_poly(rng: random.Random, max_degree=4, max_terms=6) -> BivariatePolynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        terms[(i, j)] = random_fraction(rng)
    return BivariatePolynomial(terms)


def random_affine_map(rng: random.Random) -> AffineMap2:
    while True:
        entries = [random_fraction(rng, -4, 4, 4) for _ in range(6)]
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if det != 0 and Fraction(1, 4) <= abs(det) <= 4:
            return AffineMap2(*entries)
