"""Plane rational functions num/den with exact reduction helpers.

Reduction never attempts general multivariate factorization.  It removes
rational content, normalizes the sign of the denominator, and cancels factors
from a caller-supplied list of known polynomial factors (family constructors
pass e.g. x^2 + y^2 + 1).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .polynomial import BivariatePolynomial, poly_divide


class PlaneRationalFunction:
    """Quotient of two bivariate polynomials with a nonzero denominator."""

    __slots__ = ("num", "den", "known_factors")

    def __init__(
        self,
        num: BivariatePolynomial,
        den: BivariatePolynomial,
        known_factors: Iterable[BivariatePolynomial] = (),
    ):
        if den.is_zero:
            raise ZeroDivisionError("denominator is the zero polynomial")
        num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self.known_factors = tuple(known_factors)

    @classmethod
    def from_polynomial(cls, p: BivariatePolynomial) -> "PlaneRationalFunction":
        return cls(p, BivariatePolynomial.constant(1))

    @property
    def is_polynomial(self) -> bool:
        return self.den == BivariatePolynomial.constant(1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneRationalFunction):
            return NotImplemented
        # Cross multiplication: equality as rational functions.
        return self.num * other.den == other.num * self.den

    def __repr__(self) -> str:
        return f"PlaneRationalFunction({self.num!r}, {self.den!r})"

    def evaluate(self, x, y) -> Fraction:
        dv = self.den.evaluate(x, y)
        if dv == 0:
            raise ZeroDivisionError(f"pole at ({x}, {y})")
        return self.num.evaluate(x, y) / dv

    def partial(self, var: str) -> "PlaneRationalFunction":
        """Quotient-rule derivative, reduced with the known factors."""
        u, v = self.num, self.den
        raw = PlaneRationalFunction(
            u.partial(var) * v - u * v.partial(var),
            v * v,
            self.known_factors,
        )
        return rational_reduce(raw)

    def __mul__(self, other) -> "PlaneRationalFunction":
        if isinstance(other, PlaneRationalFunction):
            return PlaneRationalFunction(
                self.num * other.num,
                self.den * other.den,
                self.known_factors + other.known_factors,
            )
        return PlaneRationalFunction(
            self.num * other, self.den, self.known_factors
        )

    def __sub__(self, other) -> "PlaneRationalFunction":
        if not isinstance(other, PlaneRationalFunction):
            return NotImplemented
        return PlaneRationalFunction(
            self.num * other.den - other.num * self.den,
            self.den * other.den,
            self.known_factors + other.known_factors,
        )


def _normalize(
    num: BivariatePolynomial, den: BivariatePolynomial
) -> Tuple[BivariatePolynomial, BivariatePolynomial]:
    # Positive leading coefficient and content 1 on the denominator.
    _, lead = den.leading_term()
    scale = den.content()
    if lead < 0:
        scale = -scale
    if scale != 1 and scale != 0:
        inv = Fraction(1) / scale
        num = num * inv
        den = den * inv
    return num, den


def rational_reduce(
    f: PlaneRationalFunction,
    extra_factors: Sequence[BivariatePolynomial] = (),
) -> PlaneRationalFunction:
    """Cancel known common factors and rational content; value unchanged.

    Only factors supplied by the caller or recorded on the function itself are
    tried, so reduced form is relative to that list, not a canonical form.
    """
    num, den = f.num, f.den
    factors = tuple(f.known_factors) + tuple(extra_factors)
    changed = True
    while changed and not num.is_zero:
        changed = False
        for factor in factors:
            if factor.degree <= 0:
                continue
            qn = poly_divide(num, factor)
            if qn is None:
                continue
            qd = poly_divide(den, factor)
            if qd is None:
                continue
            num, den = qn, qd
            changed = True
    if num.is_zero:
        den = BivariatePolynomial.constant(1)
    return PlaneRationalFunction(num, den, f.known_factors)
