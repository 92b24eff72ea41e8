"""Exact real-root counting, isolation and refinement for rational polynomials.

Everything here is Sturm-sequence based and fully exact.  Counts are of
distinct real roots (the square-free part is taken first); intervals are
half open, (lo, hi], with rational endpoints.  Infinite bounds are realized
through the Cauchy root bound B = 1 + max|c_i| / |lead|, which encloses every
real root strictly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

from .polynomial import (
    UnivariatePolynomial,
    format_rational,
    poly_gcd,
    squarefree_part,
)

BoundLike = Union[int, Fraction, float, None]


@dataclass(frozen=True)
class IsolatingInterval:
    """Rational interval (lo, hi] containing exactly one root of its target."""

    lo: Fraction
    hi: Fraction
    multiplicity_one: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError("isolating interval requires lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo < x <= self.hi

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}

    def __float__(self) -> float:
        return float(self.midpoint)


def cauchy_bound(p: UnivariatePolynomial) -> Fraction:
    """All real roots of p lie strictly inside (-B, B)."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return Fraction(1)
    lead = abs(p.leading())
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


def _sturm_chain(p: UnivariatePolynomial) -> List[UnivariatePolynomial]:
    # Caller passes a square-free polynomial.  Remainders are rescaled by
    # their positive content only; sign flips would break the sign counts.
    chain = [p.primitive(), p.derivative().primitive()]
    while not chain[-1].is_zero:
        r = chain[-2].rem(chain[-1])
        chain.append((-r).primitive())
    chain.pop()
    return chain


def _variations(signs: List[int]) -> int:
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations_at(chain: List[UnivariatePolynomial], x: Fraction) -> int:
    return _variations([_sign(q(x)) for q in chain])


def _normalize_bound(p: UnivariatePolynomial, bound: BoundLike, side: int) -> Fraction:
    if bound is None or (isinstance(bound, float) and math.isinf(bound)):
        b = cauchy_bound(p)
        return -b if side < 0 else b
    if isinstance(bound, float):
        raise TypeError("bounds must be exact rationals or infinite")
    return Fraction(bound)


@lru_cache(maxsize=256)
def _squarefree_cached(p: UnivariatePolynomial) -> UnivariatePolynomial:
    return squarefree_part(p)


@lru_cache(maxsize=256)
def _chain_cached(q: UnivariatePolynomial) -> tuple:
    return tuple(_sturm_chain(q))


def sturm_count(
    p: UnivariatePolynomial, lo: BoundLike = None, hi: BoundLike = None
) -> int:
    """Number of distinct real roots of p in (lo, hi].

    None (or an infinite float) means the corresponding infinite bound.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return 0
    q = _squarefree_cached(p)
    if q.degree == 0:
        return 0
    a = _normalize_bound(q, lo, -1)
    b = _normalize_bound(q, hi, +1)
    if not a < b:
        raise ValueError("requires lo < hi")
    # Clamp to the Cauchy box; roots outside it do not exist.
    bound = cauchy_bound(q)
    a = max(a, -bound)
    b = min(b, bound)
    if not a < b:
        return 0
    chain = _chain_cached(q)
    return _variations_at(chain, a) - _variations_at(chain, b)


def _shrink_around(
    q: UnivariatePolynomial, root: Fraction, radius: Fraction
) -> IsolatingInterval:
    # Exact root hit: build a small isolating interval centred on it.
    while True:
        lo, hi = root - radius, root + radius
        if sturm_count(q, lo, hi) == 1 and q(lo) != 0 and q(hi) != 0:
            return IsolatingInterval(lo, hi)
        radius /= 2


def isolate_roots(
    p: UnivariatePolynomial, max_width=Fraction(1, 2)
) -> List[IsolatingInterval]:
    """Disjoint rational intervals, one per distinct real root, sorted.

    Intervals are refined down to max_width so callers get usable locations
    immediately.  The multiplicity_one flag reports whether the root is
    simple in p itself (roots of gcd(p, p') are the repeated ones).
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree <= 0:
        return []
    q = _squarefree_cached(p)
    repeated = poly_gcd(p, p.derivative())
    bound = cauchy_bound(q)
    found: List[IsolatingInterval] = []
    stack: List[Tuple[Fraction, Fraction, int]] = []
    total = sturm_count(q, -bound, bound)
    if total:
        stack.append((-bound, bound, total))
    while stack:
        lo, hi, count = stack.pop()
        if count == 1:
            if q(hi) == 0:
                found.append(_shrink_around(q, hi, (hi - lo) / 4))
            else:
                found.append(IsolatingInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        if q(mid) == 0:
            # Excise an isolating window around the midpoint root so the
            # children cannot count it again through a half-open endpoint.
            iv = _shrink_around(q, mid, (hi - lo) / 8)
            found.append(iv)
            left = sturm_count(q, lo, iv.lo)
            right = sturm_count(q, iv.hi, hi)
            if left:
                stack.append((lo, iv.lo, left))
            if right:
                stack.append((iv.hi, hi, right))
        else:
            left = sturm_count(q, lo, mid)
            right = count - left
            if left:
                stack.append((lo, mid, left))
            if right:
                stack.append((mid, hi, right))
    if max_width is not None:
        width = Fraction(max_width)
        found = [
            _refine_to_width(q, iv, width) for iv in found
        ]
    found.sort(key=lambda iv: iv.lo)
    # Exact-root shrinking can overlap a neighbour; bisect until disjoint.
    for k in range(len(found) - 1):
        while found[k].hi > found[k + 1].lo:
            found[k] = _bisect_step(q, found[k])
            found[k + 1] = _bisect_step(q, found[k + 1])
    if not repeated.is_zero and repeated.degree > 0:
        found = [
            IsolatingInterval(
                iv.lo,
                iv.hi,
                multiplicity_one=sturm_count(repeated, iv.lo, iv.hi) == 0,
            )
            for iv in found
        ]
    return found


def _refine_to_width(
    q: UnivariatePolynomial, iv: IsolatingInterval, width: Fraction
) -> IsolatingInterval:
    while iv.width > width:
        iv = _bisect_step(q, iv)
    return iv


def _bisect_step(
    q: UnivariatePolynomial, iv: IsolatingInterval
) -> IsolatingInterval:
    mid = iv.midpoint
    if q(mid) == 0:
        return _shrink_around(q, mid, iv.width / 8)
    if sturm_count(q, iv.lo, mid) == 1:
        return IsolatingInterval(iv.lo, mid, iv.multiplicity_one)
    return IsolatingInterval(mid, iv.hi, iv.multiplicity_one)


def refine_root(
    p: UnivariatePolynomial, iv: IsolatingInterval, width
) -> IsolatingInterval:
    """Shrink an isolating interval to the requested width by exact bisection."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if p.is_zero:
        raise ValueError("zero polynomial")
    q = p
    if _sign(p(iv.lo)) * _sign(p(iv.hi)) >= 0:
        q = _squarefree_cached(p)
    if sturm_count(q, iv.lo, iv.hi) != 1:
        raise ValueError("interval does not isolate a root of p")
    out = IsolatingInterval(iv.lo, iv.hi, iv.multiplicity_one)
    while out.width > width:
        out = _bisect_step(q, out)
    return out


def sign_at_root(
    q: UnivariatePolynomial, p: UnivariatePolynomial, iv: IsolatingInterval
) -> int:
    """Exact sign of q at the unique root of p inside iv.

    Decides q(root) == 0 through gcd(p, q), then refines the interval until q
    has no root in it, at which point a single evaluation settles the sign.
    """
    if q.is_zero:
        return 0
    ps = _squarefree_cached(p)
    common = poly_gcd(ps, q)
    if common.degree > 0 and sturm_count(common, iv.lo, iv.hi) >= 1:
        return 0
    lo, hi = iv.lo, iv.hi
    while sturm_count(q, lo, hi) > 0:
        mid = (lo + hi) / 2
        if ps(mid) == 0:
            return _sign(q(mid))
        if _sign(ps(lo)) * _sign(ps(mid)) < 0:
            hi = mid
        elif sturm_count(ps, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return _sign(q(hi))


def rational_roots(p: UnivariatePolynomial) -> List[Fraction]:
    """All rational roots (distinct, sorted) by the rational-root test."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return []
    q = _squarefree_cached(p)
    roots: List[Fraction] = []
    coeffs = list(q.coeffs)
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    if shift:
        roots.append(Fraction(0))
        q = UnivariatePolynomial(coeffs)
    if q.degree <= 0:
        return sorted(roots)
    # Clear denominators so candidates are divisor ratios of integers.
    den_lcm = 1
    for c in q.coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in q.coeffs]
    lead, const = abs(ints[-1]), abs(ints[0])
    for pn in _divisors(const):
        for qd in _divisors(lead):
            for cand in (Fraction(pn, qd), Fraction(-pn, qd)):
                if cand not in roots and q(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def split_rational_roots(
    p: UnivariatePolynomial,
) -> Tuple[List[Fraction], UnivariatePolynomial]:
    """Rational roots of p plus the cofactor with those roots divided out."""
    roots = rational_roots(p)
    rest = p
    for r in roots:
        factor = UnivariatePolynomial([-r, 1])
        while True:
            quo, rem = rest.divmod(factor)
            if rem.is_zero and not quo.is_zero:
                rest = quo
                if rest(r) != 0:
                    break
            else:
                break
    return roots, rest


def _divisors(n: int) -> List[int]:
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)
