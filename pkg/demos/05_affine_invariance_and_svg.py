"""Affine invariance, curve tracing and SVG export.

Being a Hessian curve is an affine-invariant property: for any invertible
affine map T with linear determinant J, Hess((f o T)/J) = (Hess f) o T holds
as an exact polynomial identity.  This demo checks it on random instances and
writes an SVG of a nested Hessian curve with depth-colored strokes.
"""

import random
from fractions import Fraction as F

from hesslab import (
    AffineMap2,
    OddCircleParams,
    auto_bbox,
    radial_odd,
    trace_curve,
    verify_affine_invariance,
)
from hesslab.cli import emit_csv, emit_svg
from helpers_demo import random_affine_map, random_poly

rng = random.Random(0)
checks = 0
for _ in range(25):
    f = random_poly(rng, max_degree=6)
    T = random_affine_map(rng)
    assert verify_affine_invariance(f, T)
    checks += 1
print(f"affine-invariance identity verified on {checks} random (f, T) pairs")

T = AffineMap2(F(1, 2), 0, F(1, 3), F(2, 3), 1, -1)
print("example map determinant J =", T.det)

# Trace the three nested circles of the odd n=2 family and export them.
params = OddCircleParams(2)
s2, t2 = radial_odd(params).lift()
components = trace_curve(4 * s2 * t2, auto_bbox(params), 128)
emit_svg(components, "odd2_hessian_curve.svg", bbox=auto_bbox(params))
emit_csv(components, "odd2_hessian_curve.csv")
print(f"wrote odd2_hessian_curve.svg and .csv with {len(components)} components")
