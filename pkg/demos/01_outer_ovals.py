"""Outer ovals: a line arrangement whose Hessian curve is m+n separate ovals.

The surface is the graph of a product of m+n+2 lines: two through the origin
with slopes a and b, m vertical lines left of the y-axis and n to the right.
When the lines are in good position, the curve where the graph's Gaussian
curvature changes sign (the Hessian curve) consists of exactly m+n ovals,
none inside another, and the graph carries exactly 3(m+n) godrons (special
parabolic points).  Everything below is certified with exact rational
arithmetic; the marching-squares trace is corroboration, not evidence.
"""

from fractions import Fraction as F

from hesslab import (
    OuterOvalParams,
    build_outer_oval,
    check_good_position,
    format_polynomial,
    hessian_poly,
    shifted_alpha_beta,
    isolate_roots,
    verify_theorem1,
)

# m = 1 vertical line at x = -1, n = 1 at x = +1, slopes +1 and -1.
params = OuterOvalParams(a=1, b=-1, a_list=(F(-1),), b_list=(F(1),))
f = build_outer_oval(params)
print("f =", format_polynomial(f))
print("Hess f =", format_polynomial(hessian_poly(f)))

print("\ngood position:", bool(check_good_position(params)))

# The Hessian regroups as beta(x) u^2 + alpha(x) in the sheared frame
# y = u + (a+b)x/2; the real roots of alpha are the vertical tangencies.
ab = shifted_alpha_beta(params)
print("alpha coefficients (low to high):", [str(c) for c in ab.alpha.coeffs])
print("vertical tangency windows:")
for iv in isolate_roots(ab.alpha):
    print(f"   ({iv.lo}, {iv.hi}]")

report = verify_theorem1(params)
print("\ncertification claims:")
for claim in report.claims:
    print(f"  [{'pass' if claim.passed else 'FAIL'}] {claim.id}: "
          f"expected {claim.expected}, observed {claim.observed}")
print("overall:", report.overall)
