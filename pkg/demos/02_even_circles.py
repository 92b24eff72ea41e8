"""Even circle stacks: products of circles with 2(n-1) concentric Hessian circles.

For f = prod (x^2 + y^2 - m_i^2) the Hessian polynomial factors exactly as
4 * s(x, y) * t(x, y) where s and t are radial.  Counting positive roots of
the univariate profiles s~ and t~ therefore counts the circles of the Hessian
curve exactly, with no tracing involved; tracing only corroborates.
"""

from hesslab import (
    EvenCircleParams,
    auto_bbox,
    build_even_circles,
    count_components,
    hessian_poly,
    isolate_roots,
    radial_even,
    sturm_count,
    trace_curve,
    verify_theorem2,
)

params = EvenCircleParams(radii=(1, 2))
pair = radial_even(params)  # verifies 4*s*t == Hess f before returning
print("s~ coefficients:", [str(c) for c in pair.s_tilde.coeffs])
print("t~ coefficients:", [str(c) for c in pair.t_tilde.coeffs])

# 2x^2 - 5 and 6x^2 - 5: one positive root each, so two circles, with
# radius^2 = 5/2 and 5/6.
for name, prof in (("s~", pair.s_tilde), ("t~", pair.t_tilde)):
    count = sturm_count(prof, 0, None)
    windows = [iv for iv in isolate_roots(prof) if iv.hi > 0]
    print(f"{name}: {count} positive root(s) in "
          + ", ".join(f"({iv.lo}, {iv.hi}]" for iv in windows))

hess = hessian_poly(build_even_circles(params))
components = trace_curve(hess, auto_bbox(params), 128)
print("traced components:", count_components(components))

for n in range(1, 6):
    report = verify_theorem2(EvenCircleParams(tuple(range(1, n + 1))))
    traced = report.claim("traced-circles").observed
    print(f"n={n}: {traced} circles (expected {2 * (n - 1)}), "
          f"overall={'pass' if report.overall else 'FAIL'}")
