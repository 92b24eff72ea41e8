"""Differential geometry of graph surfaces z = f(x, y), all of it exact.

The central object is the Hessian polynomial f_xx f_yy - f_xy^2, whose zero
set projects the parabolic points of the graph to the plane.  The sign of the
discriminant of the second fundamental form (which is minus the Hessian)
classifies each point as elliptic, parabolic or hyperbolic; asymptotic
directions are the real root directions of that form; contact order of a
tangent line is the vanishing order of a univariate restriction.

All predicates are decided exactly.  When an asymptotic direction is
irrational, computations are carried out in the quadratic extension
Q(sqrt(d)) via :class:`QuadExt`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .polynomial import (
    BivariatePolynomial,
    format_rational,
    is_perfect_square,
    line_profile,
    rational_sqrt,
)
from .rational import PlaneRationalFunction, rational_reduce

SurfaceFunction = Union[BivariatePolynomial, PlaneRationalFunction]

INFINITE_CONTACT = math.inf


class PointClass(enum.Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SecondForm:
    """Coefficients (f_xx, f_xy, f_yy) of the second fundamental form at a point."""

    a: Fraction  # f_xx
    b: Fraction  # f_xy
    c: Fraction  # f_yy

    @property
    def discriminant(self) -> Fraction:
        return self.b * self.b - self.a * self.c

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0


class QuadExt:
    """Element a + b*sqrt(d) of a real quadratic extension of the rationals.

    d is a fixed positive rational that is not a rational square, so the
    representation is unique and the zero test (a == b == 0) is exact.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = Fraction(d)

    def _pair(self, other):
        """Common-extension views of self and other, or NotImplemented.

        Operands with b == 0 are plain rationals and adopt the other side's
        extension tag; genuinely mixed extensions are rejected.
        """
        if isinstance(other, (int, Fraction)):
            return self, QuadExt(other, 0, self.d)
        if not isinstance(other, QuadExt):
            return NotImplemented
        if other.d == self.d:
            return self, other
        if other.b == 0:
            return self, QuadExt(other.a, 0, self.d)
        if self.b == 0:
            return QuadExt(self.a, 0, other.d), other
        raise ValueError("mixed quadratic extensions")

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        s, o = pair
        return s.a == o.a and s.b == o.b

    def __add__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        s, o = pair
        return QuadExt(s.a + o.a, s.b + o.b, s.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        s, o = pair
        return QuadExt(s.a - o.a, s.b - o.b, s.d)

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        s, o = pair
        return QuadExt(o.a - s.a, o.b - s.b, s.d)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        s, o = pair
        return QuadExt(
            s.a * o.a + s.b * o.b * s.d,
            s.a * o.b + s.b * o.a,
            s.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadExt(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(float(self.d))

    def __repr__(self) -> str:
        return f"QuadExt({self.a} + {self.b}*sqrt({self.d}))"


# ---------------------------------------------------------------------------
# Hessians
# ---------------------------------------------------------------------------


def hessian_poly(f: BivariatePolynomial) -> BivariatePolynomial:
    """The Hessian polynomial f_xx * f_yy - f_xy^2, exactly."""
    fxx = f.partial("x").partial("x")
    fyy = f.partial("y").partial("y")
    fxy = f.partial("x").partial("y")
    return fxx * fyy - fxy * fxy


def hessian_rational(f: PlaneRationalFunction) -> PlaneRationalFunction:
    """Quotient-rule Hessian of num/den, reduced with the known factors.

    With f = u/v the three second partials share the denominator v^3:

        f_xx = [(u_xx v - u v_xx) v - 2 v_x (u_x v - u v_x)] / v^3

    and symmetrically, so the Hessian is (P_xx P_yy - P_xy^2) / v^6.
    """
    u, v = f.num, f.den
    if f.is_polynomial:
        return PlaneRationalFunction.from_polynomial(hessian_poly(u))
    ux, uy = u.partial("x"), u.partial("y")
    vx, vy = v.partial("x"), v.partial("y")
    uxx, uyy, uxy = ux.partial("x"), uy.partial("y"), ux.partial("y")
    vxx, vyy, vxy = vx.partial("x"), vy.partial("y"), vx.partial("y")
    wx = ux * v - u * vx
    wy = uy * v - u * vy
    pxx = (uxx * v - u * vxx) * v - 2 * vx * wx
    pyy = (uyy * v - u * vyy) * v - 2 * vy * wy
    pxy = (uxy * v + ux * vy - uy * vx - u * vxy) * v - 2 * vy * wx
    hess = PlaneRationalFunction(
        pxx * pyy - pxy * pxy, v ** 6, f.known_factors
    )
    return rational_reduce(hess)


def second_form_at(f: SurfaceFunction, point: Sequence) -> SecondForm:
    """Exact second fundamental form coefficients at a rational point."""
    x, y = Fraction(point[0]), Fraction(point[1])
    if isinstance(f, BivariatePolynomial):
        fx = f.partial("x")
        fy = f.partial("y")
        return SecondForm(
            a=fx.partial("x").evaluate(x, y),
            b=fx.partial("y").evaluate(x, y),
            c=fy.partial("y").evaluate(x, y),
        )
    u, v = f.num, f.den
    vv = v.evaluate(x, y)
    if vv == 0:
        raise ZeroDivisionError(f"pole at ({x}, {y})")
    ux, uy = u.partial("x"), u.partial("y")
    vx, vy = v.partial("x"), v.partial("y")
    vals = {
        "u": u.evaluate(x, y),
        "ux": ux.evaluate(x, y),
        "uy": uy.evaluate(x, y),
        "uxx": ux.partial("x").evaluate(x, y),
        "uxy": ux.partial("y").evaluate(x, y),
        "uyy": uy.partial("y").evaluate(x, y),
        "vx": vx.evaluate(x, y),
        "vy": vy.evaluate(x, y),
        "vxx": vx.partial("x").evaluate(x, y),
        "vxy": vx.partial("y").evaluate(x, y),
        "vyy": vy.partial("y").evaluate(x, y),
    }
    wx = vals["ux"] * vv - vals["u"] * vals["vx"]
    wy = vals["uy"] * vv - vals["u"] * vals["vy"]
    v3 = vv ** 3
    fxx = ((vals["uxx"] * vv - vals["u"] * vals["vxx"]) * vv - 2 * vals["vx"] * wx) / v3
    fyy = ((vals["uyy"] * vv - vals["u"] * vals["vyy"]) * vv - 2 * vals["vy"] * wy) / v3
    fxy = (
        (vals["uxy"] * vv + vals["ux"] * vals["vy"] - vals["uy"] * vals["vx"]
         - vals["u"] * vals["vxy"]) * vv
        - 2 * vals["vy"] * wx
    ) / v3
    return SecondForm(a=fxx, b=fxy, c=fyy)


def classify_point(f: SurfaceFunction, point: Sequence) -> PointClass:
    """Elliptic, parabolic or hyperbolic by the exact sign of the discriminant."""
    disc = second_form_at(f, point).discriminant
    if disc < 0:
        return PointClass.ELLIPTIC
    if disc == 0:
        return PointClass.PARABOLIC
    return PointClass.HYPERBOLIC


# ---------------------------------------------------------------------------
# Asymptotic directions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticDirections:
    """Real root directions of A dx^2 + 2B dx dy + C dy^2 = 0.

    kind is one of "none", "one", "two", "all".  Direction components are
    Fractions when the discriminant is a rational square and QuadExt elements
    otherwise.
    """

    kind: str
    directions: Tuple[Tuple, ...]

    def __len__(self) -> int:
        return len(self.directions)


def asymptotic_directions(f: SurfaceFunction, point: Sequence) -> AsymptoticDirections:
    form = second_form_at(f, point)
    return _directions_of_form(form)


def _directions_of_form(form: SecondForm) -> AsymptoticDirections:
    a, b, c = form.a, form.b, form.c
    if form.is_zero:
        return AsymptoticDirections("all", ())
    disc = form.discriminant
    if disc < 0:
        return AsymptoticDirections("none", ())
    if disc == 0:
        if a != 0:
            return AsymptoticDirections("one", ((-b, a),))
        # a == 0 forces b == 0 here, so the form is c*dy^2 with c != 0.
        return AsymptoticDirections("one", ((Fraction(1), Fraction(0)),))
    if a == 0:
        # dy * (2b dx + c dy) = 0: both directions rational.
        return AsymptoticDirections(
            "two", ((Fraction(1), Fraction(0)), (-c, 2 * b))
        )
    root = rational_sqrt(disc)
    if root is not None:
        return AsymptoticDirections(
            "two", (((-b + root), a), ((-b - root), a))
        )
    return AsymptoticDirections(
        "two",
        (
            (QuadExt(-b, 1, disc), QuadExt(a, 0, disc)),
            (QuadExt(-b, -1, disc), QuadExt(a, 0, disc)),
        ),
    )


# ---------------------------------------------------------------------------
# Contact order
# ---------------------------------------------------------------------------


def contact_order(
    f: SurfaceFunction,
    point: Sequence,
    direction: Sequence,
    cap: Optional[int] = None,
):
    """Order of contact of the tangent line at `point` along `direction`.

    Computed as the vanishing order at t = 0 of

        h(t) = f(p + t d) - f(p) - t * grad f(p) . d,

    which subtracts the tangent plane restricted to the line.  For polynomial
    (and cleared rational) input the order is exact; INFINITE_CONTACT means h
    is identically zero.  If a cap is given, any larger order reports as
    infinite as well.
    """
    if _is_zero_direction(direction):
        raise ValueError("direction must be nonzero")
    if isinstance(f, BivariatePolynomial):
        coeffs = line_profile(f, point, direction)
        # h_0 and h_1 cancel exactly against value and directional derivative.
        trimmed = [Fraction(0), Fraction(0)] + list(coeffs[2:])
        return _vanishing_order(trimmed, cap)
    u, v = f.num, f.den
    x, y = Fraction(point[0]), Fraction(point[1])
    v0 = v.evaluate(x, y)
    if v0 == 0:
        raise ZeroDivisionError(f"pole at ({x}, {y})")
    uu = line_profile(u, point, direction)
    vv = line_profile(v, point, direction)
    # h = u/v - c0 - c1 t has the vanishing order of its cleared numerator
    # N(t) = U(t) - (c0 + c1 t) V(t) because V(0) != 0.
    u1 = uu[1] if len(uu) > 1 else Fraction(0)
    v1 = vv[1] if len(vv) > 1 else Fraction(0)
    c0 = uu[0] / v0
    c1 = (u1 - c0 * v1) / v0
    n = max(len(uu), len(vv) + 1)
    coeffs = []
    for k in range(n):
        uk = uu[k] if k < len(uu) else Fraction(0)
        vk = vv[k] if k < len(vv) else Fraction(0)
        vk1 = vv[k - 1] if 0 <= k - 1 < len(vv) else Fraction(0)
        coeffs.append(uk - c0 * vk - c1 * vk1)
    return _vanishing_order(coeffs, cap)


def _is_zero_direction(direction) -> bool:
    for comp in direction:
        if isinstance(comp, QuadExt):
            if not comp.is_zero:
                return False
        elif Fraction(comp) != 0:
            return False
    return True


def _vanishing_order(coeffs, cap):
    order = None
    for k, ck in enumerate(coeffs):
        if isinstance(ck, QuadExt):
            nonzero = not ck.is_zero
        else:
            nonzero = ck != 0
        if nonzero:
            order = k
            break
    if order is None:
        return INFINITE_CONTACT
    if order < 2:
        raise ArithmeticError(
            "tangent-plane correction failed; expected vanishing to order 2"
        )
    if cap is not None and order > cap:
        return INFINITE_CONTACT
    return order


# ---------------------------------------------------------------------------
# Jets of rational functions
# ---------------------------------------------------------------------------


def taylor_jet(f: SurfaceFunction, point: Sequence, max_degree: int) -> BivariatePolynomial:
    """Degree 2..max_degree Taylor jet of f recentered at a rational point."""
    if max_degree < 2:
        raise ValueError("max_degree must be >= 2")
    if isinstance(f, BivariatePolynomial):
        return f.translate_jet(point, max_degree)
    u = f.num.shifted(point)
    v = f.den.shifted(point)
    v0 = v.coefficient(0, 0)
    if v0 == 0:
        raise ZeroDivisionError(f"pole at ({point[0]}, {point[1]})")
    # 1/v = (1/v0) * sum_k e^k truncated, with e = 1 - v/v0 (no constant term).
    e = BivariatePolynomial.constant(1) - v * (Fraction(1) / v0)
    inv = BivariatePolynomial.constant(1)
    power = BivariatePolynomial.constant(1)
    for _ in range(max_degree):
        power = _truncate(power * e, max_degree)
        inv = inv + power
    series = _truncate(u * inv, max_degree) * (Fraction(1) / v0)
    return BivariatePolynomial(
        {k: c for k, c in series.terms.items() if 2 <= k[0] + k[1] <= max_degree}
    )


def _truncate(p: BivariatePolynomial, max_degree: int) -> BivariatePolynomial:
    return BivariatePolynomial(
        {k: c for k, c in p.terms.items() if k[0] + k[1] <= max_degree}
    )


# ---------------------------------------------------------------------------
# Special parabolic point certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialPointCertificate:
    """Result of the five exact checks for a special parabolic point (godron).

    verdict is the conjunction: the Hessian vanishes at the point, its
    gradient does not, there is exactly one asymptotic direction, the contact
    order along it is at least 4, and the recentered 4-jet is not a perfect
    square.
    """

    point: Tuple[Fraction, Fraction]
    hessian_vanishes: bool
    hessian_gradient_nonzero: bool
    unique_asymptotic_direction: Optional[Tuple[Fraction, Fraction]]
    contact_order_ge_4: bool
    jet4_not_square: bool

    @property
    def verdict(self) -> bool:
        return (
            self.hessian_vanishes
            and self.hessian_gradient_nonzero
            and self.unique_asymptotic_direction is not None
            and self.contact_order_ge_4
            and self.jet4_not_square
        )

    def to_json(self) -> dict:
        direction = None
        if self.unique_asymptotic_direction is not None:
            direction = [format_rational(c) for c in self.unique_asymptotic_direction]
        return {
            "point": [format_rational(self.point[0]), format_rational(self.point[1])],
            "hessian_vanishes": self.hessian_vanishes,
            "hessian_gradient_nonzero": self.hessian_gradient_nonzero,
            "unique_asymptotic_direction": direction,
            "contact_order_ge_4": self.contact_order_ge_4,
            "jet4_not_square": self.jet4_not_square,
            "verdict": self.verdict,
        }


def certify_special_parabolic(
    f: SurfaceFunction, point: Sequence
) -> SpecialPointCertificate:
    """Run the five special-parabolic-point checks at an exact rational point.

    The point must be parabolic (vanishing Hessian); anything else raises.
    Degenerate parabolic points are not subclassified: they simply fail one of
    the checks and come back with verdict False.
    """
    x, y = Fraction(point[0]), Fraction(point[1])
    form = second_form_at(f, (x, y))
    if form.discriminant != 0:
        raise ValueError(
            f"point ({x}, {y}) is not parabolic (discriminant "
            f"{form.discriminant})"
        )

    if isinstance(f, BivariatePolynomial):
        hess = hessian_poly(f)
        grad = (
            hess.partial("x").evaluate(x, y),
            hess.partial("y").evaluate(x, y),
        )
    else:
        hess_rat = hessian_rational(f)
        num = hess_rat.num
        if num.evaluate(x, y) != 0:
            raise ArithmeticError("Hessian numerator should vanish at a parabolic point")
        grad = (
            num.partial("x").evaluate(x, y),
            num.partial("y").evaluate(x, y),
        )
    gradient_nonzero = grad != (0, 0)

    dirs = _directions_of_form(form)
    direction = None
    if dirs.kind == "one":
        direction = dirs.directions[0]

    contact_ok = False
    if direction is not None:
        order = contact_order(f, (x, y), direction)
        contact_ok = order == INFINITE_CONTACT or order >= 4

    jet = taylor_jet(f, (x, y), 4)
    not_square = not is_perfect_square(jet)

    return SpecialPointCertificate(
        point=(x, y),
        hessian_vanishes=True,
        hessian_gradient_nonzero=gradient_nonzero,
        unique_asymptotic_direction=direction,
        contact_order_ge_4=contact_ok,
        jet4_not_square=not_square,
    )
