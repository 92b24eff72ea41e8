"""Constructors for the three certified families and their auxiliary polynomials.

* Outer-oval family: a product of m+n+2 lines in good position, two through
  the origin with slopes a != b and m+n verticals interleaved around 0.
* Even circle family: a product of n concentric circles, polynomial of
  degree 2n.
* Odd circle family: a rational function whose numerator stacks n circles of
  integer radius over powers of x^2 + y^2 + 1.

Each constructor returns the expanded function; companion helpers expose the
closed-form data used by the certifiers (the alpha/beta grouping of the
Hessian in a sheared frame, and the radial factor pair s, t with the exact
identity 4*s*t = Hess f).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .diffgeo import hessian_poly, hessian_rational
from .polynomial import (
    AffineMap2,
    BivariatePolynomial,
    UnivariatePolynomial,
    format_rational,
    parse_rational,
)
from .rational import PlaneRationalFunction
from .realroots import IsolatingInterval, isolate_roots, rational_roots, sturm_count
from .polynomial import poly_gcd


class ParameterError(ValueError):
    """Family parameters violating the ordering or degeneracy hypotheses."""


class FactorizationError(ArithmeticError):
    """A closed-form identity failed to hold; internal inconsistency."""


def _frac(value) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


# ---------------------------------------------------------------------------
# Parameter records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OuterOvalParams:
    """Slopes a != b and vertical abscissae a_m < ... < a_1 < 0 < b_1 < ... < b_n."""

    a: Fraction
    b: Fraction
    a_list: Tuple[Fraction, ...] = ()
    b_list: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        object.__setattr__(self, "a_list", tuple(_frac(v) for v in self.a_list))
        object.__setattr__(self, "b_list", tuple(_frac(v) for v in self.b_list))
        if self.a == self.b:
            raise ParameterError("requires a != b")
        seq = list(reversed(self.a_list)) + [Fraction(0)] + list(self.b_list)
        for prev, nxt in zip(seq, seq[1:]):
            if not prev < nxt:
                raise ParameterError(
                    "requires a_m < ... < a_1 < 0 < b_1 < ... < b_n "
                    f"(violated near {format_rational(prev)})"
                )

    @property
    def m(self) -> int:
        return len(self.a_list)

    @property
    def n(self) -> int:
        return len(self.b_list)

    def to_dict(self) -> dict:
        return {
            "family": "outer",
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "a_list": [format_rational(v) for v in self.a_list],
            "b_list": [format_rational(v) for v in self.b_list],
        }


@dataclass(frozen=True)
class EvenCircleParams:
    """Strictly increasing positive radii m_1 < ... < m_n."""

    radii: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(_frac(v) for v in self.radii))
        if not self.radii:
            raise ParameterError("requires at least one radius")
        seq = (Fraction(0),) + self.radii
        for prev, nxt in zip(seq, seq[1:]):
            if not prev < nxt:
                raise ParameterError("requires 0 < m_1 < m_2 < ... < m_n")

    @property
    def n(self) -> int:
        return len(self.radii)

    def to_dict(self) -> dict:
        return {
            "family": "even",
            "radii": [format_rational(v) for v in self.radii],
        }


@dataclass(frozen=True)
class OddCircleParams:
    """Number of stacked circles; radii are fixed to 1..n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("requires n >= 1")

    def to_dict(self) -> dict:
        return {"family": "odd", "n": self.n}


FamilyParams = Union[OuterOvalParams, EvenCircleParams, OddCircleParams]


@dataclass(frozen=True)
class FamilySpec:
    """Tagged union of the three families, parseable from JSON."""

    params: FamilyParams

    @property
    def kind(self) -> str:
        if isinstance(self.params, OuterOvalParams):
            return "outer"
        if isinstance(self.params, EvenCircleParams):
            return "even"
        return "odd"

    @classmethod
    def from_dict(cls, data: dict) -> "FamilySpec":
        kind = data.get("family")
        if kind == "outer":
            return cls(
                OuterOvalParams(
                    a=data["a"],
                    b=data["b"],
                    a_list=tuple(data.get("a_list", ())),
                    b_list=tuple(data.get("b_list", ())),
                )
            )
        if kind == "even":
            return cls(EvenCircleParams(radii=tuple(data["radii"])))
        if kind == "odd":
            return cls(OddCircleParams(n=int(data["n"])))
        raise ParameterError(f"unknown family tag: {kind!r}")

    @classmethod
    def from_json(cls, text: str) -> "FamilySpec":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return self.params.to_dict()

    def build(self):
        if isinstance(self.params, OuterOvalParams):
            return build_outer_oval(self.params)
        if isinstance(self.params, EvenCircleParams):
            return build_even_circles(self.params)
        return build_odd_circles(self.params)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def _line_factors(params: OuterOvalParams) -> List[Tuple[str, BivariatePolynomial]]:
    x = BivariatePolynomial.x()
    y = BivariatePolynomial.y()
    factors = [
        ("y - a*x", y - params.a * x),
        ("y - b*x", y - params.b * x),
    ]
    for i, ai in enumerate(params.a_list, start=1):
        factors.append((f"x - a_{i}", x - BivariatePolynomial.constant(ai)))
    for j, bj in enumerate(params.b_list, start=1):
        factors.append((f"x - b_{j}", x - BivariatePolynomial.constant(bj)))
    return factors


def build_outer_oval(params: OuterOvalParams) -> BivariatePolynomial:
    """The product of all m+n+2 lines; degree m + n + 2."""
    f = BivariatePolynomial.constant(1)
    for _, factor in _line_factors(params):
        f = f * factor
    return f


def build_even_circles(params: EvenCircleParams) -> BivariatePolynomial:
    """prod_i (x^2 + y^2 - m_i^2); degree 2n."""
    w = BivariatePolynomial({(2, 0): 1, (0, 2): 1})
    f = BivariatePolynomial.constant(1)
    for r in params.radii:
        f = f * (w - BivariatePolynomial.constant(r * r))
    return f


def build_odd_circles(params: OddCircleParams) -> PlaneRationalFunction:
    """prod_k (x^2 + y^2 - k^2) / (x^2 + y^2 + 1)^n as a reduced quotient."""
    w = BivariatePolynomial({(2, 0): 1, (0, 2): 1})
    num = BivariatePolynomial.constant(1)
    for k in range(1, params.n + 1):
        num = num * (w - BivariatePolynomial.constant(k * k))
    den_factor = w + BivariatePolynomial.constant(1)
    return PlaneRationalFunction(
        num, den_factor ** params.n, known_factors=(den_factor,)
    )


# ---------------------------------------------------------------------------
# Good position
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GoodPositionResult:
    """Outcome of the good-position check, with a witness when it fails.

    A failure means some arrangement line contains a critical point of the
    product of the other lines; the witness locates that point.
    """

    ok: bool
    line: Optional[str] = None
    witness_interval: Optional[IsolatingInterval] = None
    witness_point: Optional[Tuple[Fraction, Fraction]] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out: dict = {"ok": self.ok}
        if not self.ok:
            out["line"] = self.line
            if self.witness_interval is not None:
                out["witness_interval"] = self.witness_interval.to_json()
            if self.witness_point is not None:
                out["witness_point"] = [
                    format_rational(self.witness_point[0]),
                    format_rational(self.witness_point[1]),
                ]
        return out


def _line_geometry(
    params: OuterOvalParams, index: int
) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    # Base point and direction for each arrangement line, in factor order.
    if index == 0:
        return (Fraction(0), Fraction(0)), (Fraction(1), params.a)
    if index == 1:
        return (Fraction(0), Fraction(0)), (Fraction(1), params.b)
    k = index - 2
    if k < len(params.a_list):
        return (params.a_list[k], Fraction(0)), (Fraction(0), Fraction(1))
    return (params.b_list[k - len(params.a_list)], Fraction(0)), (
        Fraction(0),
        Fraction(1),
    )


def check_good_position(params: OuterOvalParams) -> GoodPositionResult:
    """Decide whether the arrangement lines are in good position.

    For each line, the product P of the remaining factors is restricted to it
    and the two restricted partial derivatives are tested for a shared real
    root via an exact univariate gcd plus a Sturm count.
    """
    factors = _line_factors(params)
    for index, (label, _) in enumerate(factors):
        product = BivariatePolynomial.constant(1)
        for other_index, (_, poly) in enumerate(factors):
            if other_index != index:
                product = product * poly
        base, direction = _line_geometry(params, index)
        px = product.partial("x").restrict_to_line(base, direction)
        py = product.partial("y").restrict_to_line(base, direction)
        if px.is_zero and py.is_zero:
            witness = base
            return GoodPositionResult(False, label, None, witness)
        if px.is_zero or py.is_zero:
            common = py if px.is_zero else px
        else:
            common = poly_gcd(px, py)
        if common.degree <= 0:
            continue
        if sturm_count(common) == 0:
            continue
        intervals = isolate_roots(common)
        interval = intervals[0]
        point = None
        roots = rational_roots(common)
        if roots:
            # Report the interval that holds the rational witness root.
            t = roots[0]
            for iv in intervals:
                if iv.contains(t):
                    interval = iv
                    break
            point = (
                base[0] + t * direction[0],
                base[1] + t * direction[1],
            )
        return GoodPositionResult(False, label, interval, point)
    return GoodPositionResult(True)


# ---------------------------------------------------------------------------
# Alpha/beta grouping of the outer-oval Hessian
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaBeta:
    """Hess f regrouped in the sheared frame y = u + (a+b)x/2.

    The identity Hess f(x, u + (a+b)x/2) = beta(x) u^2 + alpha(x) holds
    exactly; the u^1 coefficient vanishes identically for every valid
    parameter set, and alpha has degree 2(m+n).
    """

    alpha: UnivariatePolynomial
    beta: UnivariatePolynomial


def shifted_alpha_beta(params: OuterOvalParams) -> AlphaBeta:
    """Extract alpha and beta by exact coefficient matching in the sheared frame."""
    f = build_outer_oval(params)
    hess = hessian_poly(f)
    shear = AffineMap2(1, 0, (params.a + params.b) / 2, 1, 0, 0)
    shifted = hess.compose_affine(shear)
    by_u = shifted.coefficients_in_y()
    stray = sorted(j for j in by_u if j not in (0, 2))
    if stray:
        raise FactorizationError(
            f"unexpected u^{stray[0]} term in the sheared Hessian"
        )
    alpha = by_u.get(0, UnivariatePolynomial.zero())
    beta = by_u.get(2, UnivariatePolynomial.zero())
    return AlphaBeta(alpha=alpha, beta=beta)


# ---------------------------------------------------------------------------
# Radial factorizations of the circle-family Hessians
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialPair:
    """Even univariate profiles s~, t~ with Hess f = 4 s t after lifting x^2 -> x^2+y^2."""

    s_tilde: UnivariatePolynomial
    t_tilde: UnivariatePolynomial

    def lift(self) -> Tuple[BivariatePolynomial, BivariatePolynomial]:
        return _lift_even(self.s_tilde), _lift_even(self.t_tilde)


def _lift_even(p: UnivariatePolynomial) -> BivariatePolynomial:
    """Substitute x^2 -> x^2 + y^2 in an even polynomial."""
    w = BivariatePolynomial({(2, 0): 1, (0, 2): 1})
    out = BivariatePolynomial.zero()
    w_pow = BivariatePolynomial.constant(1)
    for k, c in enumerate(p.coeffs):
        if k % 2 == 1:
            if c != 0:
                raise FactorizationError("radial profile has an odd term")
            continue
        if c != 0:
            out = out + w_pow * c
        if k + 2 <= p.degree:
            w_pow = w_pow * w
    return out


def _products_omitting(values: List[Fraction], skip: Tuple[int, ...]) -> UnivariatePolynomial:
    # prod over i not in skip of (x^2 - values[i]); univariate in x.
    out = UnivariatePolynomial.constant(1)
    for i, v in enumerate(values):
        if i in skip:
            continue
        out = out * UnivariatePolynomial([-v, 0, 1])
    return out


def radial_even(params: EvenCircleParams) -> RadialPair:
    """Closed-form radial factors of the even-family Hessian, verified exactly.

    s~(x) = sum_j prod_{i != j} (x^2 - m_i^2)
    t~(x) = s~(x) + 2 x^2 * sum_{j != l} prod_{i != j, l} (x^2 - m_i^2)

    The exact identity 4 * s * t = Hess f is checked before returning.
    """
    squares = [r * r for r in params.radii]
    n = len(squares)
    s = UnivariatePolynomial.zero()
    for j in range(n):
        s = s + _products_omitting(squares, (j,))
    double = UnivariatePolynomial.zero()
    for j in range(n):
        for l in range(n):
            if l != j:
                double = double + _products_omitting(squares, (j, l))
    t = s + UnivariatePolynomial([0, 0, 2]) * double
    pair = RadialPair(s_tilde=s, t_tilde=t)
    s2, t2 = pair.lift()
    hess = hessian_poly(build_even_circles(params))
    if 4 * s2 * t2 != hess:
        raise FactorizationError("4*s*t != Hess f for the even circle family")
    return pair


def radial_odd(params: OddCircleParams) -> RadialPair:
    """Closed-form radial factors of the odd-family Hessian, verified exactly.

    s~(x) = sum_j (j^2+1) prod_{k != j} (x^2 - k^2)
    t~(x) = (1 - 3x^2) s~(x)
            + 2 x^2 sum_j (j^2+1) sum_{l != j} (l^2+1) prod_{k != j,l} (x^2 - k^2)

    Verified against the quotient-rule Hessian via cross multiplication:
    Hess f = 4 s t / (x^2 + y^2 + 1)^(2n+3).
    """
    n = params.n
    squares = [Fraction(k * k) for k in range(1, n + 1)]
    weights = [Fraction(k * k + 1) for k in range(1, n + 1)]
    s = UnivariatePolynomial.zero()
    for j in range(n):
        s = s + weights[j] * _products_omitting(squares, (j,))
    double = UnivariatePolynomial.zero()
    for j in range(n):
        for l in range(n):
            if l != j:
                double = double + (
                    weights[j] * weights[l] * _products_omitting(squares, (j, l))
                )
    t = UnivariatePolynomial([1, 0, -3]) * s + UnivariatePolynomial([0, 0, 2]) * double
    pair = RadialPair(s_tilde=s, t_tilde=t)
    s2, t2 = pair.lift()
    f = build_odd_circles(params)
    hess = hessian_rational(f)
    w1 = BivariatePolynomial({(2, 0): 1, (0, 2): 1, (0, 0): 1})
    lhs = hess.num * w1 ** (2 * n + 3)
    rhs = 4 * s2 * t2 * hess.den
    if lhs != rhs:
        raise FactorizationError(
            "4*s*t/(x^2+y^2+1)^(2n+3) != Hess f for the odd circle family"
        )
    return pair
