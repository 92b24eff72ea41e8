import math
import os
import random
import subprocess
import sys
from fractions import Fraction as F

import pytest

from hesslab import (
    BivariatePolynomial,
    EvenCircleParams,
    OddCircleParams,
    OuterOvalParams,
    PointClass,
    auto_bbox,
    build_even_circles,
    build_outer_oval,
    classify_regions,
    count_components,
    hessian_poly,
    nesting_forest,
    radial_even,
    radial_odd,
    sturm_count,
    trace_curve,
)

X = BivariatePolynomial.x()
Y = BivariatePolynomial.y()
W = X ** 2 + Y ** 2


class TestTraceCurve:
    def test_unit_circle(self):
        comps = trace_curve(W - 1, (-2, 2, -2, 2), 64)
        assert len(comps) == 1
        comp = comps[0]
        assert comp.closed
        assert abs(comp.area - math.pi) < 0.02 * math.pi
        assert comp.vertical_tangent_count == 2

    def test_two_nested_circles(self):
        comps = trace_curve((W - 1) * (W - 4), (-3, 3, -3, 3), 64)
        assert count_components(comps) == 2
        forest = nesting_forest(comps)
        assert forest.edge_count == 1
        assert forest.is_chain()

    def test_outer_instance_matches_oval_count(self):
        params = OuterOvalParams(1, -1, (F(-1),), (F(1),))
        hess = hessian_poly(build_outer_oval(params))
        comps = trace_curve(hess, auto_bbox(params), 128)
        assert count_components(comps) == 2
        assert nesting_forest(comps).is_edgeless()

    def test_empty_curve(self):
        comps = trace_curve(W + 1, (-2, 2, -2, 2), 32)
        assert count_components(comps) == 0

    def test_open_curve_flagged(self):
        # A circle clipped by the box comes back non-closed and counting fails.
        comps = trace_curve(W - 4, (0, 3, -3, 3), 32)
        assert any(not c.closed for c in comps)
        with pytest.raises(ValueError):
            count_components(comps)

    def test_low_resolution_rejected(self):
        with pytest.raises(ValueError):
            trace_curve(W - 1, (-2, 2, -2, 2), 8)

    @pytest.mark.parametrize("eps", [F(1, 1000), F(-1, 1000)], ids=["pos", "neg"])
    def test_saddle_cells_resolved(self, eps):
        # xy = eps has hyperbola branches hugging the axes; the cell around
        # the origin is a checkerboard saddle and must pair its crossings so
        # the two branches stay in opposite quadrants.
        p = X * Y - eps
        comps = trace_curve(p, (-2, 2, -2, 2), 32)
        assert len(comps) == 2
        assert all(not c.closed for c in comps)
        quadrant_signs = set()
        for comp in comps:
            mx = sum(v[0] for v in comp.polyline) / len(comp.polyline)
            my = sum(v[1] for v in comp.polyline) / len(comp.polyline)
            quadrant_signs.add((mx > 0, my > 0))
        if eps > 0:
            assert quadrant_signs == {(True, True), (False, False)}
        else:
            assert quadrant_signs == {(True, False), (False, True)}

    def test_grid_vertex_on_curve(self):
        # (3/2)^2 + (1/2)^2 = 5/2 puts exact zeros on the evaluation grid; the
        # positive-perturbation convention must keep the loop intact.
        p = W - F(5, 2)
        diags = []
        comps = trace_curve(p, (-3, 3, -3, 3), 64, diagnostics=diags)
        assert count_components(comps) == 1

    def test_vertex_residuals_bounded(self):
        # Interpolated crossings evaluate small relative to their edge values.
        p = (W - 1) * (W - 4)
        comps = trace_curve(p, (-3, 3, -3, 3), 64)
        for comp in comps:
            for (vx, vy) in comp.polyline[:50]:
                assert abs(p.evaluate(F(round(vx * 4096), 4096), F(round(vy * 4096), 4096))) < F(1, 2)


class TestNesting:
    def test_side_by_side(self):
        p = ((X - 2) ** 2 + Y ** 2 - 1) * ((X + 2) ** 2 + Y ** 2 - 1)
        comps = trace_curve(p, (-4, 4, -4, 4), 64)
        forest = nesting_forest(comps)
        assert forest.is_edgeless()
        assert not forest.edge_count

    def test_three_level_chain(self):
        pair = radial_odd(OddCircleParams(2))
        s2, t2 = pair.lift()
        comps = trace_curve(4 * s2 * t2, auto_bbox(OddCircleParams(2)), 128)
        assert count_components(comps) == 3
        forest = nesting_forest(comps)
        assert forest.is_chain()
        assert sorted(forest.depth(i) for i in forest.parent) == [0, 1, 2]


class TestOracleEquivalence:
    def test_even_counts_match_sturm(self):
        for n in range(1, 6):
            params = EvenCircleParams(tuple(range(1, n + 1)))
            pair = radial_even(params)
            expected = 0
            for profile in (pair.s_tilde, pair.t_tilde):
                if profile.degree >= 1:
                    expected += sturm_count(profile, 0, None)
            hess = hessian_poly(build_even_circles(params))
            comps = trace_curve(hess, auto_bbox(params), 128)
            assert count_components(comps) == expected == 2 * (n - 1)

    def test_odd_counts_match_sturm(self):
        for n in range(1, 5):
            params = OddCircleParams(n)
            pair = radial_odd(params)
            expected = 0
            for profile in (pair.s_tilde, pair.t_tilde):
                if profile.degree >= 1:
                    expected += sturm_count(profile, 0, None)
            s2, t2 = pair.lift()
            comps = trace_curve(4 * s2 * t2, auto_bbox(params), 128)
            assert count_components(comps) == expected == 2 * n - 1


class TestResolutionStability:
    @pytest.mark.parametrize(
        "params",
        [
            OuterOvalParams(1, -1, (F(-1),), (F(1),)),
            EvenCircleParams((1, 2)),
            OddCircleParams(2),
        ],
        ids=["outer", "even", "odd"],
    )
    def test_doubling_resolution_is_stable(self, params):
        if isinstance(params, OuterOvalParams):
            curve = hessian_poly(build_outer_oval(params))
        elif isinstance(params, EvenCircleParams):
            curve = hessian_poly(build_even_circles(params))
        else:
            s2, t2 = radial_odd(params).lift()
            curve = 4 * s2 * t2
        rect = auto_bbox(params)
        a = trace_curve(curve, rect, 128)
        b = trace_curve(curve, rect, 256)
        assert count_components(a) == count_components(b)
        assert nesting_forest(a).to_json() == nesting_forest(b).to_json()


class TestClassifyRegions:
    def test_even_far_field_elliptic(self):
        params = EvenCircleParams((1, 2))
        f = build_even_circles(params)
        rect = auto_bbox(params)
        comps = trace_curve(hessian_poly(f), rect, 128)
        rc = classify_regions(
            f, comps, rect, far_points=[(F(10), F(0))]
        )
        unbounded = rc.region("unbounded")
        assert unbounded.unanimous is PointClass.ELLIPTIC
        assert any(pt == (F(10), F(0)) for pt, _ in unbounded.samples)

    def test_even_annuli_alternate(self):
        params = EvenCircleParams((1, 2))
        f = build_even_circles(params)
        rect = auto_bbox(params)
        comps = trace_curve(hessian_poly(f), rect, 128)
        rc = classify_regions(f, comps, rect, rng=random.Random(5))
        classes = {r.name: r.unanimous for r in rc.regions}
        assert classes["unbounded"] is PointClass.ELLIPTIC
        inner = [v for k, v in classes.items() if k.startswith("inside_")]
        assert PointClass.HYPERBOLIC in inner and PointClass.ELLIPTIC in inner

    def test_odd_far_field_hyperbolic(self):
        from hesslab import build_odd_circles

        params = OddCircleParams(1)
        f = build_odd_circles(params)
        pair = radial_odd(params)
        s2, t2 = pair.lift()
        rect = auto_bbox(params)
        comps = trace_curve(4 * s2 * t2, rect, 128)
        rc = classify_regions(f, comps, rect, far_points=[(F(10), F(0))])
        assert rc.region("unbounded").unanimous is PointClass.HYPERBOLIC

    def test_outer_far_field_hyperbolic(self):
        params = OuterOvalParams(1, -1, (F(-1),), (F(1),))
        f = build_outer_oval(params)
        rect = auto_bbox(params)
        comps = trace_curve(hessian_poly(f), rect, 128)
        rc = classify_regions(f, comps, rect, far_points=[(F(5), F(0))])
        assert rc.region("unbounded").unanimous is PointClass.HYPERBOLIC


class TestAutoBbox:
    def test_even_cover(self):
        rect = auto_bbox(EvenCircleParams((1, 2)))
        # Largest circle radius is sqrt(5/2) = 1.58; cover must reach past it.
        assert rect[0] <= -2 and rect[1] >= 2
        assert all(v.denominator == 1 for v in rect)

    def test_odd_cover(self):
        rect = auto_bbox(OddCircleParams(1))
        assert rect[0] <= -2 and rect[1] >= 2

    def test_outer_cover(self):
        rect = auto_bbox(OuterOvalParams(1, -1, (F(-1),), (F(1),)))
        assert rect[0] <= -2 and rect[1] >= 2
        assert rect[2] <= -2 and rect[3] >= 2


class TestThreadedGrid:
    def test_thread_env_does_not_change_results(self):
        # The parallel grid path must be bit-identical to the sequential one.
        code = (
            "from hesslab import trace_curve, BivariatePolynomial\n"
            "X = BivariatePolynomial.x(); Y = BivariatePolynomial.y()\n"
            "p = (X**2 + Y**2 - 1) * (X**2 + Y**2 - 4)\n"
            "comps = trace_curve(p, (-3, 3, -3, 3), 64)\n"
            "print(len(comps), [len(c.polyline) for c in comps])\n"
        )
        outputs = []
        for threads in ("", "2"):
            env = dict(os.environ)
            if threads:
                env["HESSLAB_THREADS"] = threads
            else:
                env.pop("HESSLAB_THREADS", None)
            proc = subprocess.run(
                [sys.executable, "-c", code],
                capture_output=True,
                text=True,
                env=env,
                cwd=os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
            )
            assert proc.returncode == 0, proc.stderr
            outputs.append(proc.stdout)
        assert outputs[0] == outputs[1]
