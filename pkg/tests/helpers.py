"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hesslab import AffineMap2, BivariatePolynomial, UnivariatePolynomial


def random_fraction(rng: random.Random, lo: int = -9, hi: int = 9, den: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_nonzero_fraction(rng: random.Random, lo=-9, hi=9, den=9) -> Fraction:
    while True:
        value = random_fraction(rng, lo, hi, den)
        if value != 0:
            return value


def random_poly(
    rng: random.Random, max_degree: int = 4, max_terms: int = 6
) -> BivariatePolynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        terms[(i, j)] = random_fraction(rng)
    return BivariatePolynomial(terms)


def random_nonzero_poly(rng: random.Random, max_degree=4, max_terms=6):
    while True:
        p = random_poly(rng, max_degree, max_terms)
        if not p.is_zero:
            return p


def random_unipoly(
    rng: random.Random, max_degree: int = 10
) -> UnivariatePolynomial:
    degree = rng.randint(0, max_degree)
    coeffs = [random_fraction(rng) for _ in range(degree)]
    coeffs.append(random_nonzero_fraction(rng))
    return UnivariatePolynomial(coeffs)


def random_affine_map(rng: random.Random) -> AffineMap2:
    while True:
        entries = [random_fraction(rng, -4, 4, 4) for _ in range(6)]
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if det != 0 and Fraction(1, 4) <= abs(det) <= 4:
            return AffineMap2(*entries)


def sylvester_resultant(
    p: UnivariatePolynomial, q: UnivariatePolynomial
) -> Fraction:
    """Resultant by Gaussian elimination on the Sylvester matrix.

    Independent of the gcd machinery under test: nonzero resultant proves the
    two polynomials share no root, real or complex.
    """
    m, n = p.degree, q.degree
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    size = m + n
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    matrix = []
    for k in range(n):
        matrix.append([Fraction(0)] * k + pc + [Fraction(0)] * (size - m - 1 - k))
    for k in range(m):
        matrix.append([Fraction(0)] * k + qc + [Fraction(0)] * (size - n - 1 - k))
    det = Fraction(1)
    for col in range(size):
        pivot = None
        for row in range(col, size):
            if matrix[row][col] != 0:
                pivot = row
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
            det = -det
        det *= matrix[col][col]
        inv = Fraction(1) / matrix[col][col]
        for row in range(col + 1, size):
            factor = matrix[row][col] * inv
            if factor == 0:
                continue
            matrix[row] = [
                a - factor * b for a, b in zip(matrix[row], matrix[col])
            ]
    return det


def report_without_timings(report) -> str:
    return report.to_json(include_timings=False)
