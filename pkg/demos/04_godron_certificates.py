"""Godrons: certifying special parabolic points with five exact checks.

A godron (special parabolic point, Gaussian cusp) is a parabolic point where
the parabolic curve is locally smooth, there is exactly one asymptotic
direction, its contact order with the surface is at least 4, and the degree
2..4 jet of the function is not a perfect square.  Each check is decided
exactly; points with irrational coordinates are handled through isolating
intervals and exact sign queries.
"""

from fractions import Fraction as F

from hesslab import (
    BivariatePolynomial,
    OuterOvalParams,
    build_outer_oval,
    certify_special_parabolic,
    verify_theorem1,
)

X = BivariatePolynomial.x()
Y = BivariatePolynomial.y()

params = OuterOvalParams(a=1, b=-1, a_list=(F(-1),), b_list=(F(1),))
f = build_outer_oval(params)

# The point (-1, 0) sits on the vertical line x = -1 at height (a+b)x/2.
cert = certify_special_parabolic(f, (F(-1), F(0)))
print("certificate at (-1, 0):")
for key, value in cert.to_json().items():
    print(f"  {key}: {value}")

# Two classic failures: the cylinder has an identically zero Hessian
# gradient, and x^2 + y^4 degenerates the same way at the origin.
for g, label in ((X ** 2, "x^2"), (X ** 2 + Y ** 4, "x^2 + y^4")):
    cert = certify_special_parabolic(g, (0, 0))
    print(f"{label} at the origin: verdict {cert.verdict} "
          f"(gradient nonzero: {cert.hessian_gradient_nonzero})")

# On the sloped lines the godrons sit over the critical points of
# g(x) = x (x - a_1) (x - b_1), which are irrational here; the verifier
# certifies them on isolating intervals instead of rational points.
report = verify_theorem1(params)
lines = report.claim("slope-line-godrons").witnesses["lines"]
for line in lines:
    print(f"\n{line['line']}: {line['certified']} godron(s)")
    for cert in line["certificates"]:
        where = cert.get("point") or cert.get("interval")
        print(f"  at {where}: verdict {cert['verdict']}")
