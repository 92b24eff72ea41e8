"""Exact sparse arithmetic for polynomials in two variables over the rationals.

Coefficients are `fractions.Fraction` throughout, so everything in this module
is exact: no floating point, no tolerances.  A bivariate polynomial is a map
from exponent pairs (i, j) to nonzero coefficients; the zero polynomial is the
empty map.  Univariate polynomials are dense coefficient lists, lowest degree
first.

The text format understood by :func:`parse_polynomial` and produced by
:func:`format_polynomial` is a sum of monomials ``c*x^i*y^j`` with ``c`` an
integer or exact fraction ``p/q``.  Whitespace is ignored and the two
functions round-trip bit-exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

RationalLike = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as ``p`` or ``p/q``.

    Decimal notation is rejected on purpose: silently converting ``0.1`` to a
    binary-ish fraction would defeat the exactness guarantees downstream.
    """
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not an exact rational (use p or p/q): {text!r}")
    return Fraction(text)


def format_rational(value: RationalLike) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_sqrt(value: RationalLike) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    value = Fraction(value)
    if value < 0:
        return None
    ns = math.isqrt(value.numerator)
    ds = math.isqrt(value.denominator)
    if ns * ns == value.numerator and ds * ds == value.denominator:
        return Fraction(ns, ds)
    return None


class BivariatePolynomial:
    """Sparse polynomial in x and y with Fraction coefficients.

    Instances are immutable by convention: no method mutates `terms`, and all
    arithmetic returns new objects with zero coefficients trimmed eagerly.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], RationalLike] | None = None):
        clean: dict[Tuple[int, int], Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in term ({i}, {j})")
                c = Fraction(c)
                if c != 0:
                    clean[(int(i), int(j))] = c
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "BivariatePolynomial":
        return cls()

    @classmethod
    def constant(cls, c: RationalLike) -> "BivariatePolynomial":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def monomial(cls, i: int, j: int, c: RationalLike = 1) -> "BivariatePolynomial":
        return cls({(i, j): Fraction(c)})

    @classmethod
    def x(cls) -> "BivariatePolynomial":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def y(cls) -> "BivariatePolynomial":
        return cls({(0, 1): Fraction(1)})

    # -- basic queries -------------------------------------------------------

    @property
    def terms(self) -> dict[Tuple[int, int], Fraction]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def graded_part(self, d: int) -> "BivariatePolynomial":
        """The homogeneous part of total degree d."""
        return BivariatePolynomial(
            {k: c for k, c in self._terms.items() if k[0] + k[1] == d}
        )

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariatePolynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"BivariatePolynomial({format_polynomial(self)!r})"

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "BivariatePolynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "BivariatePolynomial":
        return _wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "BivariatePolynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BivariatePolynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "BivariatePolynomial":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return BivariatePolynomial()
            return _wrap({k: v * c for k, v in self._terms.items()})
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        out: dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                s = out.get(k, Fraction(0)) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return _wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivariatePolynomial":
        if n < 0:
            raise ValueError("negative exponent")
        result = BivariatePolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and substitution -------------------------------------------

    def partial(self, var: str) -> "BivariatePolynomial":
        """Exact formal partial derivative with respect to 'x' or 'y'."""
        if var not in ("x", "y"):
            raise ValueError("var must be 'x' or 'y'")
        out: dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in self._terms.items():
            if var == "x":
                if i:
                    out[(i - 1, j)] = c * i
            else:
                if j:
                    out[(i, j - 1)] = c * j
        return _wrap(out)

    def evaluate(self, x: RationalLike, y: RationalLike) -> Fraction:
        x = Fraction(x)
        y = Fraction(y)
        if not self._terms:
            return Fraction(0)
        max_i = max(i for i, _ in self._terms)
        max_j = max(j for _, j in self._terms)
        xs = _power_table(x, max_i)
        ys = _power_table(y, max_j)
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            total += c * xs[i] * ys[j]
        return total

    def evaluate_at(self, point: Sequence[RationalLike]) -> Fraction:
        return self.evaluate(point[0], point[1])

    def compose_affine(self, T: "AffineMap2") -> "BivariatePolynomial":
        """Expand p(T(x, y)) exactly."""
        if not self._terms:
            return BivariatePolynomial()
        gx = BivariatePolynomial(
            {(1, 0): T.a11, (0, 1): T.a12, (0, 0): T.tx}
        )
        gy = BivariatePolynomial(
            {(1, 0): T.a21, (0, 1): T.a22, (0, 0): T.ty}
        )
        max_i = max(i for i, _ in self._terms)
        max_j = max(j for _, j in self._terms)
        gx_pows = _poly_power_table(gx, max_i)
        gy_pows = _poly_power_table(gy, max_j)
        out = BivariatePolynomial()
        for (i, j), c in sorted(self._terms.items()):
            out = out + gx_pows[i] * gy_pows[j] * c
        return out

    def shifted(self, point: Sequence[RationalLike]) -> "BivariatePolynomial":
        """Recenter at `point`: returns q with q(u, v) = p(point + (u, v))."""
        T = AffineMap2.translation(point[0], point[1])
        return self.compose_affine(T)

    def restrict_to_line(
        self,
        base: Sequence[RationalLike],
        direction: Sequence[RationalLike],
    ) -> "UnivariatePolynomial":
        """The univariate polynomial t -> p(base + t * direction)."""
        dx, dy = Fraction(direction[0]), Fraction(direction[1])
        if dx == 0 and dy == 0:
            raise ValueError("direction must be nonzero")
        coeffs = line_profile(self, base, direction)
        return UnivariatePolynomial(coeffs)

    def translate_jet(
        self, point: Sequence[RationalLike], max_degree: int
    ) -> "BivariatePolynomial":
        """Terms of degree 2..max_degree of p recentered at `point`.

        The constant and linear parts of the shifted polynomial are dropped,
        matching the usual jet-without-lower-terms convention.
        """
        if max_degree < 2:
            raise ValueError("max_degree must be >= 2")
        shifted = self.shifted(point)
        return BivariatePolynomial(
            {
                (i, j): c
                for (i, j), c in shifted.terms.items()
                if 2 <= i + j <= max_degree
            }
        )

    # -- structure helpers -----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        if not self._terms:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self._terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def leading_term(self) -> Tuple[Tuple[int, int], Fraction]:
        """Leading term under graded-lex order (total degree, then x-degree)."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = max(self._terms, key=lambda k: (k[0] + k[1], k[0]))
        return key, self._terms[key]

    def coefficients_in_y(self) -> dict[int, "UnivariatePolynomial"]:
        """Group terms by y-exponent; values are univariate polynomials in x."""
        rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), c in self._terms.items():
            rows.setdefault(j, {})[i] = c
        out = {}
        for j, row in rows.items():
            deg = max(row)
            out[j] = UnivariatePolynomial(
                [row.get(i, Fraction(0)) for i in range(deg + 1)]
            )
        return out


def _wrap(terms: dict) -> BivariatePolynomial:
    p = BivariatePolynomial.__new__(BivariatePolynomial)
    p._terms = terms
    return p


def _coerce(value) -> "BivariatePolynomial":
    if isinstance(value, BivariatePolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return BivariatePolynomial.constant(value)
    return NotImplemented


def _power_table(x: Fraction, n: int) -> list:
    out = [Fraction(1)]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


def _poly_power_table(p: BivariatePolynomial, n: int) -> list:
    out = [BivariatePolynomial.constant(1)]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


def line_profile(p: BivariatePolynomial, base, direction) -> list:
    """Coefficients of t -> p(base + t*direction), lowest degree first.

    The direction components only need ring arithmetic with Fractions, so this
    also works for components in a quadratic extension of the rationals.
    """
    bx, by = Fraction(base[0]), Fraction(base[1])
    u, v = direction[0], direction[1]
    if not p.terms:
        return [Fraction(0)]
    max_i = max(i for i, _ in p.terms)
    max_j = max(j for _, j in p.terms)
    # pows1[i] is the coefficient list of (bx + t*u)^i, likewise pows2 for y.
    pows1 = _binomial_line_powers(bx, u, max_i)
    pows2 = _binomial_line_powers(by, v, max_j)
    out = [Fraction(0)] * (max_i + max_j + 1)
    for (i, j), c in p.terms.items():
        a = pows1[i]
        b = pows2[j]
        for k1, ak in enumerate(a):
            if isinstance(ak, Fraction) and ak == 0:
                continue
            cak = c * ak
            for k2, bk in enumerate(b):
                out[k1 + k2] = out[k1 + k2] + cak * bk
    return out


def _binomial_line_powers(b0: Fraction, d0, n: int) -> list:
    pows = [[Fraction(1)]]
    for _ in range(n):
        prev = pows[-1]
        nxt = [Fraction(0)] * (len(prev) + 1)
        for k, c in enumerate(prev):
            nxt[k] = nxt[k] + c * b0
            nxt[k + 1] = nxt[k + 1] + c * d0
        pows.append(nxt)
    return pows


def poly_divide(
    p: BivariatePolynomial, d: BivariatePolynomial
) -> Optional[BivariatePolynomial]:
    """Exact quotient p/d, or None when d does not divide p.

    Long division under graded-lex order; sound for exact divisibility because
    the leading term of a product is the product of leading terms.
    """
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return BivariatePolynomial()
    (di, dj), dc = d.leading_term()
    quotient: dict[Tuple[int, int], Fraction] = {}
    rem = p
    while not rem.is_zero:
        (ri, rj), rc = rem.leading_term()
        qi, qj = ri - di, rj - dj
        if qi < 0 or qj < 0:
            return None
        qc = rc / dc
        quotient[(qi, qj)] = quotient.get((qi, qj), Fraction(0)) + qc
        rem = rem - d * BivariatePolynomial.monomial(qi, qj, qc)
    return BivariatePolynomial(quotient)


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


class UnivariatePolynomial:
    """Dense univariate polynomial over the rationals, lowest degree first."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UnivariatePolynomial":
        return cls()

    @classmethod
    def constant(cls, c: RationalLike) -> "UnivariatePolynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "UnivariatePolynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike]) -> "UnivariatePolynomial":
        p = cls.constant(1)
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def leading(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UnivariatePolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "UnivariatePolynomial('0')"
        parts = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            parts.append(f"{format_rational(c)}{'*' if mono else ''}{mono}")
        return f"UnivariatePolynomial({' + '.join(parts)!r})"

    def __add__(self, other) -> "UnivariatePolynomial":
        other = _coerce_uni(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return UnivariatePolynomial(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    __radd__ = __add__

    def __neg__(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial([-c for c in self._coeffs])

    def __sub__(self, other) -> "UnivariatePolynomial":
        other = _coerce_uni(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_uni(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "UnivariatePolynomial":
        if isinstance(other, (int, Fraction)):
            return UnivariatePolynomial([c * other for c in self._coeffs])
        if not isinstance(other, UnivariatePolynomial):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return UnivariatePolynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return UnivariatePolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x: RationalLike) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial(
            [c * k for k, c in enumerate(self._coeffs)][1:]
        )

    def divmod(
        self, divisor: "UnivariatePolynomial"
    ) -> Tuple["UnivariatePolynomial", "UnivariatePolynomial"]:
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self._coeffs)
        dlead = divisor.leading()
        dd = divisor.degree
        q = [Fraction(0)] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            factor = rem[-1] / dlead
            q[k] = factor
            for i, c in enumerate(divisor.coeffs):
                rem[k + i] -= factor * c
            while rem and rem[-1] == 0:
                rem.pop()
        return UnivariatePolynomial(q), UnivariatePolynomial(rem)

    def rem(self, divisor: "UnivariatePolynomial") -> "UnivariatePolynomial":
        return self.divmod(divisor)[1]

    def content(self) -> Fraction:
        if not self._coeffs:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self._coeffs:
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive(self) -> "UnivariatePolynomial":
        """Divide by the positive content.  Keeps the sign of every value."""
        c = self.content()
        if c in (0, 1):
            return self
        return UnivariatePolynomial([a / c for a in self._coeffs])

    def to_bivariate(self, var: str = "x") -> BivariatePolynomial:
        if var == "x":
            return BivariatePolynomial(
                {(k, 0): c for k, c in enumerate(self._coeffs)}
            )
        return BivariatePolynomial({(0, k): c for k, c in enumerate(self._coeffs)})


def _coerce_uni(value):
    if isinstance(value, UnivariatePolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return UnivariatePolynomial([value])
    return NotImplemented


def poly_gcd(
    p: UnivariatePolynomial, q: UnivariatePolynomial
) -> UnivariatePolynomial:
    """Monic gcd by the Euclidean algorithm with content normalization."""
    a, b = p.primitive(), q.primitive()
    while not b.is_zero:
        a, b = b, a.rem(b).primitive()
    if a.is_zero:
        return a
    return UnivariatePolynomial([c / a.leading() for c in a.coeffs])


def squarefree_part(p: UnivariatePolynomial) -> UnivariatePolynomial:
    """p divided by gcd(p, p'); same roots, all simple."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    q, r = p.divmod(g)
    if not r.is_zero:
        raise ArithmeticError("gcd failed to divide its argument")
    return q


# ---------------------------------------------------------------------------
# Affine maps of the plane
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap2:
    """Affine map (x, y) -> (a11 x + a12 y + tx, a21 x + a22 y + ty).

    The determinant of the linear part must be nonzero.
    """

    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction
    tx: Fraction
    ty: Fraction

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22", "tx", "ty"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.det == 0:
            raise ValueError("affine map must have invertible linear part")

    @property
    def det(self) -> Fraction:
        return self.a11 * self.a22 - self.a12 * self.a21

    @classmethod
    def identity(cls) -> "AffineMap2":
        return cls(1, 0, 0, 1, 0, 0)

    @classmethod
    def translation(cls, tx: RationalLike, ty: RationalLike) -> "AffineMap2":
        return cls(1, 0, 0, 1, tx, ty)

    @classmethod
    def linear(cls, a11, a12, a21, a22) -> "AffineMap2":
        return cls(a11, a12, a21, a22, 0, 0)

    def inverse(self) -> "AffineMap2":
        d = self.det
        b11 = self.a22 / d
        b12 = -self.a12 / d
        b21 = -self.a21 / d
        b22 = self.a11 / d
        return AffineMap2(
            b11,
            b12,
            b21,
            b22,
            -(b11 * self.tx + b12 * self.ty),
            -(b21 * self.tx + b22 * self.ty),
        )

    def apply(self, point: Sequence[RationalLike]) -> Tuple[Fraction, Fraction]:
        x, y = Fraction(point[0]), Fraction(point[1])
        return (
            self.a11 * x + self.a12 * y + self.tx,
            self.a21 * x + self.a22 * y + self.ty,
        )


# ---------------------------------------------------------------------------
# Perfect squares of truncated jets
# ---------------------------------------------------------------------------


def jet_square_root(
    p: BivariatePolynomial,
) -> Optional[Tuple[Fraction, BivariatePolynomial]]:
    """Decide whether a degree 2..4 jet is the square of a real polynomial.

    Returns (scale, r) with p == scale * r**2, scale a positive rational and r
    a rational polynomial, or None when no real square root exists.  Any real
    square root of a rational polynomial has this shape, so the decision is
    complete; soundness comes from the final exact product check.
    """
    for (i, j) in p.terms:
        if not 2 <= i + j <= 4:
            raise ValueError("expected only terms of degree 2..4")
    if p.is_zero:
        return Fraction(1), BivariatePolynomial()

    c = p.coefficient
    x2, xy, y2 = c(2, 0), c(1, 1), c(0, 2)
    candidates = []
    if x2 > 0:
        # Linear part alpha*x + beta*y with alpha = sqrt(x2); work with
        # r = sqrt(x2) * q so that all of r's coefficients stay rational.
        bt = xy / 2
        ct = c(3, 0) / 2
        dt = (c(2, 1) - 2 * bt * ct / x2) / 2
        et = (c(1, 2) - 2 * bt * dt / x2) / 2
        candidates.append(
            (
                Fraction(1) / x2,
                BivariatePolynomial(
                    {(1, 0): x2, (0, 1): bt, (2, 0): ct, (1, 1): dt, (0, 2): et}
                ),
            )
        )
    elif x2 == 0 and xy == 0 and y2 > 0:
        ct = c(2, 1) / 2
        dt = c(1, 2) / 2
        et = c(0, 3) / 2
        candidates.append(
            (
                Fraction(1) / y2,
                BivariatePolynomial(
                    {(0, 1): y2, (2, 0): ct, (1, 1): dt, (0, 2): et}
                ),
            )
        )
    elif x2 == 0 and xy == 0 and y2 == 0:
        # No linear part: the root must be a pure quadratic form.
        x4, x3y, x2y2, xy3, y4 = c(4, 0), c(3, 1), c(2, 2), c(1, 3), c(0, 4)
        if x4 > 0:
            dt = x3y / 2
            et = (x2y2 - dt * dt / x4) / 2
            candidates.append(
                (
                    Fraction(1) / x4,
                    BivariatePolynomial({(2, 0): x4, (1, 1): dt, (0, 2): et}),
                )
            )
        elif x4 == 0 and x3y == 0 and x2y2 > 0:
            candidates.append(
                (
                    Fraction(1) / x2y2,
                    BivariatePolynomial({(1, 1): x2y2, (0, 2): xy3 / 2}),
                )
            )
        elif x4 == 0 and x3y == 0 and x2y2 == 0 and xy3 == 0 and y4 > 0:
            candidates.append((y4, BivariatePolynomial({(0, 2): Fraction(1)})))

    for scale, r in candidates:
        if r * r * scale == p:
            return scale, r
    return None


def is_perfect_square(p: BivariatePolynomial) -> bool:
    """True iff the degree 2..4 jet equals q**2 for some real polynomial q."""
    return jet_square_root(p) is not None


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

_TERM_PIECE_RE = re.compile(
    r"^(?:(?P<coeff>\d+(?:/\d+)?)|(?P<var>[xy])(?:\^(?P<exp>\d+))?)$"
)


def format_polynomial(p: BivariatePolynomial) -> str:
    """Deterministic text form; parse_polynomial inverts it bit-exactly."""
    if p.is_zero:
        return "0"
    keys = sorted(p.terms, key=lambda k: (-(k[0] + k[1]), -k[0]))
    pieces = []
    for idx, (i, j) in enumerate(keys):
        coeff = p.terms[(i, j)]
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        factors = []
        if mag != 1 or (i == 0 and j == 0):
            factors.append(format_rational(mag))
        if i:
            factors.append("x" if i == 1 else f"x^{i}")
        if j:
            factors.append("y" if j == 1 else f"y^{j}")
        body = "*".join(factors)
        if idx == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def parse_polynomial(text: str) -> BivariatePolynomial:
    """Parse a sum of monomials ``c*x^i*y^j``; whitespace-insensitive."""
    compact = text.replace(" ", "").replace("\t", "")
    if not compact:
        raise ValueError("empty polynomial text")
    if compact == "0":
        return BivariatePolynomial()
    # Split into signed terms.
    terms: dict[Tuple[int, int], Fraction] = {}
    pos = 0
    sign = 1
    if compact[0] in "+-":
        sign = -1 if compact[0] == "-" else 1
        pos = 1
    buf = []
    chunks: list[Tuple[int, str]] = []
    while pos < len(compact):
        ch = compact[pos]
        if ch in "+-" and buf and buf[-1] != "/":
            chunks.append((sign, "".join(buf)))
            buf = []
            sign = -1 if ch == "-" else 1
        else:
            buf.append(ch)
        pos += 1
    if buf:
        chunks.append((sign, "".join(buf)))
    for sgn, chunk in chunks:
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        i = j = 0
        for piece in chunk.split("*"):
            m = _TERM_PIECE_RE.match(piece)
            if not m:
                raise ValueError(f"cannot parse term piece {piece!r} in {text!r}")
            if m.group("coeff"):
                coeff *= Fraction(m.group("coeff"))
            else:
                exp = int(m.group("exp") or 1)
                if m.group("var") == "x":
                    i += exp
                else:
                    j += exp
        key = (i, j)
        total = terms.get(key, Fraction(0)) + sgn * coeff
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)
    return BivariatePolynomial(terms)
