"""Odd circle stacks: rational functions with 2n-1 concentric Hessian circles.

f = prod_k (x^2 + y^2 - k^2) / (x^2 + y^2 + 1)^n is smooth on the whole plane
(the denominator never vanishes) and its Hessian is 4 s t / (x^2+y^2+1)^(2n+3)
with radial s, t.  The quotient-rule Hessian is computed exactly and reduced
against the known denominator factor, then checked against the closed form by
cross multiplication.
"""

from fractions import Fraction as F

from hesslab import (
    OddCircleParams,
    auto_bbox,
    build_odd_circles,
    classify_point,
    count_components,
    format_polynomial,
    hessian_rational,
    radial_odd,
    sturm_count,
    trace_curve,
    verify_theorem3,
)

params = OddCircleParams(n=1)
f = build_odd_circles(params)
print("f =", format_polynomial(f.num), "/", format_polynomial(f.den))

h = hessian_rational(f)
print("Hess f =", format_polynomial(h.num), "over (x^2+y^2+1)^5")

pair = radial_odd(params)
print("t~ coefficients:", [str(c) for c in pair.t_tilde.coeffs])
print("positive roots of t~:", sturm_count(pair.t_tilde, 0, None),
      "(the single circle has radius^2 = 1/3)")

# Far from the circles the surface is saddle-shaped everywhere.
print("classification at (10, 0):", classify_point(f, (F(10), F(0))))

for n in range(1, 5):
    report = verify_theorem3(OddCircleParams(n))
    pair = radial_odd(OddCircleParams(n))
    s2, t2 = pair.lift()
    comps = trace_curve(4 * s2 * t2, auto_bbox(OddCircleParams(n)), 128)
    print(f"n={n}: traced {count_components(comps)} circles "
          f"(expected {2 * n - 1}), t~({n * n}) = {pair.t_tilde(F(n * n))}, "
          f"overall={'pass' if report.overall else 'FAIL'}")
