"""Implicit-curve tracing and plane topology for Hessian curves.

Grid signs are computed by exact integer arithmetic at rational grid points,
so a sign is never wrong; floating point only enters when crossing points are
interpolated for display-grade polylines.  An exact zero at a grid vertex is
treated as positive (the standard perturbation convention) and recorded as a
diagnostic.  Ambiguous saddle cells are resolved by exact subdivision up to a
depth budget and by the exact center sign after that.
"""

from __future__ import annotations

import math
import os
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .diffgeo import PointClass, second_form_at
from .families import (
    EvenCircleParams,
    FamilySpec,
    OddCircleParams,
    OuterOvalParams,
    radial_even,
    radial_odd,
)
from .polynomial import BivariatePolynomial
from .realroots import isolate_roots

Rect = Tuple[Fraction, Fraction, Fraction, Fraction]  # xmin, xmax, ymin, ymax


@dataclass
class TracedComponent:
    """One connected piece of the traced curve as a closed polyline."""

    polyline: List[Tuple[float, float]]
    closed: bool
    bounding_box: Tuple[float, float, float, float]
    orientation: int
    vertical_tangent_count: int

    @property
    def area(self) -> float:
        return abs(_shoelace(self.polyline))


@dataclass(frozen=True)
class NestingForest:
    """parent[i] is the index of the innermost component enclosing i, or None."""

    parent: Dict[int, Optional[int]]

    @property
    def edge_count(self) -> int:
        return sum(1 for p in self.parent.values() if p is not None)

    def depth(self, i: int) -> int:
        d = 0
        while self.parent[i] is not None:
            i = self.parent[i]
            d += 1
        return d

    def is_edgeless(self) -> bool:
        return self.edge_count == 0

    def is_chain(self) -> bool:
        """True when the forest is a single path (nested like concentric circles)."""
        n = len(self.parent)
        if n <= 1:
            return True
        depths = sorted(self.depth(i) for i in self.parent)
        return depths == list(range(n))

    def to_json(self) -> dict:
        return {str(i): p for i, p in sorted(self.parent.items())}


@dataclass
class RegionReport:
    name: str
    samples: List[Tuple[Tuple[Fraction, Fraction], PointClass]]
    unanimous: Optional[PointClass]


@dataclass
class RegionClassification:
    regions: List[RegionReport]

    def region(self, name: str) -> RegionReport:
        for r in self.regions:
            if r.name == name:
                return r
        raise KeyError(name)


# ---------------------------------------------------------------------------
# Exact sign grid
# ---------------------------------------------------------------------------


def _worker_columns(args) -> List[List[int]]:
    rows, xs_chunk, ynums = args
    out = []
    for nx in xs_chunk:
        col = []
        for row in rows:
            acc = 0
            for c in reversed(row):
                acc = acc * nx + c
            col.append(acc)
        vals = []
        for ny in ynums:
            acc = 0
            for c in reversed(col):
                acc = acc * ny + c
            vals.append(acc)
        out.append(vals)
    return out


def _thread_budget() -> int:
    raw = os.environ.get("HESSLAB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def _integer_grid_values(
    p: BivariatePolynomial,
    xnums: Sequence[int],
    ynums: Sequence[int],
    den: int,
) -> List[List[int]]:
    """Exact integer multiples of p at the points (xnum/den, ynum/den).

    Values are p * L * den^D for a fixed positive constant, so signs match.
    Columns are independent, so HESSLAB_THREADS > 1 evaluates them in a
    process pool; results are merged in column order and therefore identical
    to the sequential path.
    """
    if p.is_zero:
        return [[0] * len(xnums) for _ in ynums]
    lcm = 1
    for c in p.terms.values():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    deg = p.degree
    max_j = max(j for _, j in p.terms)
    rows: List[List[int]] = [[] for _ in range(max_j + 1)]
    for j in range(max_j + 1):
        row_terms = {i: c for (i, jj), c in p.terms.items() if jj == j}
        if row_terms:
            max_i = max(row_terms)
            rows[j] = [
                int(row_terms.get(i, 0) * lcm) * den ** (deg - i - j)
                for i in range(max_i + 1)
            ]
    threads = _thread_budget()
    columns: List[List[int]] = []
    if threads > 1 and len(xnums) >= 64:
        try:
            import concurrent.futures

            chunk = (len(xnums) + threads - 1) // threads
            jobs = [
                (rows, list(xnums[k : k + chunk]), list(ynums))
                for k in range(0, len(xnums), chunk)
            ]
            with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
                for part in pool.map(_worker_columns, jobs):
                    columns.extend(part)
        except (OSError, ValueError, ImportError):
            columns = []
    if not columns:
        columns = _worker_columns((rows, list(xnums), list(ynums)))
    # columns is indexed [ix][iy]; transpose to [iy][ix].
    return [[columns[ix][iy] for ix in range(len(xnums))] for iy in range(len(ynums))]


def _next_power_of_two(n: int) -> int:
    k = 1
    while k < n:
        k <<= 1
    return k


# ---------------------------------------------------------------------------
# Marching squares
# ---------------------------------------------------------------------------

# Cell corners: bit0 = lower-left, bit1 = lower-right, bit2 = upper-right,
# bit3 = upper-left, set when the value there is negative.  Edge letters:
# S, E, N, W.  Masks 5 and 10 are the ambiguous saddles.
_CASE_TABLE: Dict[int, Tuple[Tuple[str, str], ...]] = {
    0: (),
    15: (),
    1: (("W", "S"),),
    2: (("S", "E"),),
    3: (("W", "E"),),
    4: (("E", "N"),),
    6: (("S", "N"),),
    7: (("W", "N"),),
    8: (("N", "W"),),
    9: (("S", "N"),),
    11: (("E", "N"),),
    12: (("W", "E"),),
    13: (("S", "E"),),
    14: (("W", "S"),),
}

_SADDLE_MASKS = (5, 10)


def _saddle_segments(mask: int, center_negative: bool) -> Tuple[Tuple[str, str], ...]:
    if mask == 5:  # negative corners on the main diagonal
        return (("S", "E"), ("N", "W")) if center_negative else (("W", "S"), ("E", "N"))
    return (("W", "S"), ("E", "N")) if center_negative else (("S", "E"), ("N", "W"))


def _edge_node(letter: str, cx: int, cy: int) -> Tuple[str, int, int]:
    if letter == "S":
        return ("h", cx, cy)
    if letter == "N":
        return ("h", cx, cy + 1)
    if letter == "W":
        return ("v", cx, cy)
    return ("v", cx + 1, cy)


def _sign(v) -> int:
    return -1 if v < 0 else 1


def trace_curve(
    p: BivariatePolynomial,
    bbox: Rect,
    base_resolution: int = 128,
    max_depth: int = 6,
    diagnostics: Optional[list] = None,
) -> List[TracedComponent]:
    """Extract connected components of {p = 0} inside bbox as closed polylines.

    bbox is snapped outward to integers and the resolution up to a power of
    two so every grid vertex is an exact dyadic-denominator rational.  Curves
    leaving the box come back flagged as non-closed.
    """
    if base_resolution < 16:
        raise ValueError("base_resolution must be >= 16")
    xmin = Fraction(math.floor(bbox[0]))
    xmax = Fraction(math.ceil(bbox[1]))
    ymin = Fraction(math.floor(bbox[2]))
    ymax = Fraction(math.ceil(bbox[3]))
    if not (xmin < xmax and ymin < ymax):
        raise ValueError("bbox must be nondegenerate")
    res = _next_power_of_two(max(16, base_resolution))
    span_x = xmax - xmin
    span_y = ymax - ymin
    # Grid vertex i has x = (xmin*res + i*span_x) / res, an exact rational.
    xns = [int(xmin * res + i * span_x) for i in range(res + 1)]
    yns = [int(ymin * res + j * span_y) for j in range(res + 1)]
    values = _integer_grid_values(p, xns, yns, res)

    hx = span_x / res
    hy = span_y / res
    xs = [xmin + i * hx for i in range(res + 1)]
    ys = [ymin + j * hy for j in range(res + 1)]

    segments: List[Tuple[Tuple[str, int, int], Tuple[str, int, int]]] = []
    zero_vertices = set()
    for cy in range(res):
        row0 = values[cy]
        row1 = values[cy + 1]
        for cx in range(res):
            v00, v10 = row0[cx], row0[cx + 1]
            v01, v11 = row1[cx], row1[cx + 1]
            if v00 == 0:
                zero_vertices.add((cx, cy))
            mask = (
                (v00 < 0)
                | ((v10 < 0) << 1)
                | ((v11 < 0) << 2)
                | ((v01 < 0) << 3)
            )
            if mask in _SADDLE_MASKS:
                pairing = _resolve_saddle(
                    p,
                    (xs[cx], ys[cy], hx, hy),
                    mask,
                    max_depth,
                    diagnostics,
                    (cx, cy),
                )
                for ea, eb in pairing:
                    segments.append((_edge_node(ea, cx, cy), _edge_node(eb, cx, cy)))
            else:
                for ea, eb in _CASE_TABLE[mask]:
                    segments.append((_edge_node(ea, cx, cy), _edge_node(eb, cx, cy)))
    if diagnostics is not None and zero_vertices:
        diagnostics.append(
            {"event": "zero-grid-vertices", "count": len(zero_vertices)}
        )

    coords = _crossing_coordinates(segments, values, xs, ys, hx, hy)
    return _link_chains(segments, coords)


def _resolve_saddle(
    p: BivariatePolynomial,
    rect: Tuple[Fraction, Fraction, Fraction, Fraction],
    mask: int,
    max_depth: int,
    diagnostics: Optional[list],
    cell_id: Tuple[int, int],
) -> Tuple[Tuple[str, str], ...]:
    """Resolve a saddle cell's connectivity by exact uniform subdivision.

    The coarse cell keeps its four crossings; subdivision only decides how
    they pair up.  Falls back to the exact center-sign rule when the budget
    runs out or the sub-grid shows structure the coarse cell cannot express.
    """
    x0, y0, hx, hy = rect

    def center_fallback(reason: str) -> Tuple[Tuple[str, str], ...]:
        if diagnostics is not None:
            diagnostics.append(
                {"event": "saddle-center-rule", "cell": cell_id, "reason": reason}
            )
        cval = p.evaluate(x0 + hx / 2, y0 + hy / 2)
        return _saddle_segments(mask, cval < 0)

    for depth in range(1, max_depth + 1):
        k = 2 ** depth
        vals = [
            [p.evaluate(x0 + hx * i / k, y0 + hy * j / k) for i in range(k + 1)]
            for j in range(k + 1)
        ]
        sub_segments = []
        unresolved = False
        for cy in range(k):
            for cx in range(k):
                m = (
                    (vals[cy][cx] < 0)
                    | ((vals[cy][cx + 1] < 0) << 1)
                    | ((vals[cy + 1][cx + 1] < 0) << 2)
                    | ((vals[cy + 1][cx] < 0) << 3)
                )
                if m in _SADDLE_MASKS:
                    if depth < max_depth:
                        unresolved = True
                        break
                    cval = p.evaluate(
                        x0 + hx * (2 * cx + 1) / (2 * k),
                        y0 + hy * (2 * cy + 1) / (2 * k),
                    )
                    segs = _saddle_segments(m, cval < 0)
                else:
                    segs = _CASE_TABLE[m]
                for ea, eb in segs:
                    sub_segments.append(
                        (_edge_node(ea, cx, cy), _edge_node(eb, cx, cy))
                    )
            if unresolved:
                break
        if unresolved:
            continue
        pairing = _pairing_from_subgrid(sub_segments, k)
        if pairing is None:
            return center_fallback("subgrid structure exceeds cell resolution")
        return pairing
    return center_fallback("max_depth reached")


def _pairing_from_subgrid(
    sub_segments, k: int
) -> Optional[Tuple[Tuple[str, str], ...]]:
    def boundary_side(node) -> Optional[str]:
        kind, i, j = node
        if kind == "h" and j == 0:
            return "S"
        if kind == "h" and j == k:
            return "N"
        if kind == "v" and i == 0:
            return "W"
        if kind == "v" and i == k:
            return "E"
        return None

    adjacency = defaultdict(list)
    for a, b in sub_segments:
        adjacency[a].append(b)
        adjacency[b].append(a)
    boundary_nodes = {}
    for node in adjacency:
        side = boundary_side(node)
        if side is not None:
            if side in boundary_nodes:
                return None  # more than one crossing on a coarse edge
            boundary_nodes[side] = node
    if sorted(boundary_nodes) != ["E", "N", "S", "W"]:
        return None
    pairs = []
    seen = set()
    for side, start in sorted(boundary_nodes.items()):
        if side in seen:
            continue
        prev, node = None, start
        while True:
            nbrs = [x for x in adjacency[node] if x != prev]
            if node != start and boundary_side(node) is not None:
                break
            if len(nbrs) != 1:
                return None
            prev, node = node, nbrs[0]
        other = boundary_side(node)
        if other is None or other in seen:
            return None
        seen.add(side)
        seen.add(other)
        pairs.append((side, other))
    if len(pairs) != 2:
        return None
    return tuple(pairs)


def _crossing_coordinates(segments, values, xs, ys, hx, hy):
    coords = {}
    for a, b in segments:
        for node in (a, b):
            if node in coords:
                continue
            kind, i, j = node
            if kind == "h":
                w0, w1 = values[j][i], values[j][i + 1]
                t = Fraction(w0, w0 - w1) if w0 != w1 else Fraction(1, 2)
                coords[node] = (float(xs[i] + t * hx), float(ys[j]))
            else:
                w0, w1 = values[j][i], values[j + 1][i]
                t = Fraction(w0, w0 - w1) if w0 != w1 else Fraction(1, 2)
                coords[node] = (float(xs[i]), float(ys[j] + t * hy))
    return coords


def _link_chains(segments, coords) -> List[TracedComponent]:
    adjacency = defaultdict(list)
    for a, b in segments:
        adjacency[a].append(b)
        adjacency[b].append(a)
    visited = set()
    components: List[TracedComponent] = []

    def walk(start, first):
        chain = [start, first]
        visited.add(start)
        visited.add(first)
        prev, node = start, first
        while True:
            nbrs = [x for x in adjacency[node] if x != prev]
            if not nbrs:
                return chain, False
            nxt = nbrs[0]
            if nxt == start:
                return chain, True
            chain.append(nxt)
            visited.add(nxt)
            prev, node = node, nxt

    open_ends = [n for n in adjacency if len(adjacency[n]) == 1]
    for node in open_ends:
        if node in visited:
            continue
        chain, closed = walk(node, adjacency[node][0])
        components.append(_make_component(chain, closed, coords))
    for node in list(adjacency):
        if node in visited:
            continue
        chain, closed = walk(node, adjacency[node][0])
        components.append(_make_component(chain, closed, coords))
    components.sort(key=lambda c: (c.bounding_box[0], c.bounding_box[1]))
    return components


def _make_component(chain, closed, coords) -> TracedComponent:
    pts = [coords[n] for n in chain]
    if closed:
        pts.append(pts[0])
    xsv = [q[0] for q in pts]
    ysv = [q[1] for q in pts]
    return TracedComponent(
        polyline=pts,
        closed=closed,
        bounding_box=(min(xsv), min(ysv), max(xsv), max(ysv)),
        orientation=_sign_float(_shoelace(pts)) if closed else 0,
        vertical_tangent_count=_count_x_reversals(pts) if closed else 0,
    )


def _shoelace(pts) -> float:
    total = 0.0
    for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
        total += x1 * y2 - x2 * y1
    return total / 2.0


def _sign_float(v: float) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def _count_x_reversals(pts) -> int:
    # pts is closed with the first point repeated; walk dx signs around.
    signs = []
    for (x1, _), (x2, _) in zip(pts, pts[1:]):
        if x2 != x1:
            signs.append(1 if x2 > x1 else -1)
    if not signs:
        return 0
    count = 0
    prev = signs[-1]
    for s in signs:
        if s != prev:
            count += 1
        prev = s
    return count


# ---------------------------------------------------------------------------
# Component counting and nesting
# ---------------------------------------------------------------------------


def count_components(components: Sequence[TracedComponent]) -> int:
    open_count = sum(1 for c in components if not c.closed)
    if open_count:
        raise ValueError(
            f"{open_count} non-closed component(s); the bounding box clipped the curve"
        )
    return len(components)


def _ray_parity(point: Tuple[float, float], polyline) -> Optional[bool]:
    """Crossing parity of a rightward ray; None when numerically ambiguous."""
    px, py = point
    inside = False
    for (x1, y1), (x2, y2) in zip(polyline, polyline[1:]):
        if (y1 > py) == (y2 > py):
            continue
        xc = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
        if abs(xc - px) < 1e-12:
            return None
        if xc > px:
            inside = not inside
    return inside


def _encloses(inner: TracedComponent, outer: TracedComponent) -> bool:
    # Retry with other vertices when a ray grazes a vertex of `outer`.
    candidates = inner.polyline[:-1] if len(inner.polyline) > 1 else inner.polyline
    for vertex in candidates[:8]:
        parity = _ray_parity(vertex, outer.polyline)
        if parity is not None:
            return parity
    raise ArithmeticError("ray casting stayed degenerate after retries")


def nesting_forest(components: Sequence[TracedComponent]) -> NestingForest:
    """Parent relation by ray casting each component against all others."""
    parent: Dict[int, Optional[int]] = {}
    for i, comp in enumerate(components):
        if not comp.closed:
            raise ValueError("nesting requires closed components")
        enclosing = [
            j
            for j, other in enumerate(components)
            if j != i and _encloses(comp, other)
        ]
        if enclosing:
            parent[i] = min(enclosing, key=lambda j: components[j].area)
        else:
            parent[i] = None
    return NestingForest(parent)


# ---------------------------------------------------------------------------
# Region classification
# ---------------------------------------------------------------------------


def _snap(v: float, den: int = 1 << 10) -> Fraction:
    return Fraction(round(v * den), den)


def _point_in_component(pt: Tuple[float, float], comp: TracedComponent) -> bool:
    parity = _ray_parity(pt, comp.polyline)
    return bool(parity)


def classify_regions(
    f,
    components: Sequence[TracedComponent],
    bbox: Rect,
    samples_per_region: int = 3,
    rng: Optional[random.Random] = None,
    far_points: Sequence[Tuple[Fraction, Fraction]] = (),
) -> RegionClassification:
    """Sample and exactly classify each complement region of the traced curve.

    Far-field samples live outside every component on an enlarged box; each
    closed component gets interior samples avoiding its children.  A sample
    falling exactly on the curve (discriminant zero) or on a pole is
    resampled.  Unanimity is recorded per region; disagreement is preserved
    for the caller to report.
    """
    rng = rng or random.Random(0)
    forest = nesting_forest(components) if components else NestingForest({})
    regions: List[RegionReport] = []

    def classify_exact(pt) -> Optional[PointClass]:
        try:
            form = second_form_at(f, pt)
        except ZeroDivisionError:
            return None
        d = form.discriminant
        if d == 0:
            return None
        return PointClass.ELLIPTIC if d < 0 else PointClass.HYPERBOLIC

    # Unbounded region.
    far: List[Tuple[Fraction, Fraction]] = list(far_points)
    xmin, xmax, ymin, ymax = (Fraction(b) for b in bbox)
    cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2
    wx, wy = xmax - xmin, ymax - ymin
    defaults = [
        (cx + wx, cy),
        (cx - wx, cy),
        (cx, cy + wy),
        (cx + wx, cy + wy),
    ]
    for cand in defaults:
        if len(far) >= max(samples_per_region, len(far_points)):
            break
        far.append(cand)
    samples = []
    for pt in far:
        fpt = (float(pt[0]), float(pt[1]))
        if any(_point_in_component(fpt, c) for c in components if c.closed):
            continue
        cls = classify_exact(pt)
        if cls is not None:
            samples.append((pt, cls))
    regions.append(_finish_region("unbounded", samples))

    for i, comp in enumerate(components):
        if not comp.closed:
            continue
        children = [j for j, p in forest.parent.items() if p == i]
        got = []
        x0, y0, x1, y1 = comp.bounding_box
        attempts = 0
        while len(got) < samples_per_region and attempts < 300:
            attempts += 1
            fx = rng.uniform(x0, x1)
            fy = rng.uniform(y0, y1)
            if not _point_in_component((fx, fy), comp):
                continue
            if any(
                _point_in_component((fx, fy), components[j]) for j in children
            ):
                continue
            pt = (_snap(fx), _snap(fy))
            fpt = (float(pt[0]), float(pt[1]))
            if not _point_in_component(fpt, comp):
                continue
            if any(_point_in_component(fpt, components[j]) for j in children):
                continue
            cls = classify_exact(pt)
            if cls is None:
                continue
            got.append((pt, cls))
        regions.append(_finish_region(f"inside_{i}", got))
    return RegionClassification(regions)


def _finish_region(name: str, samples) -> RegionReport:
    unanimous = None
    if samples:
        classes = {cls for _, cls in samples}
        if len(classes) == 1:
            unanimous = samples[0][1]
    return RegionReport(name=name, samples=samples, unanimous=unanimous)


# ---------------------------------------------------------------------------
# Automatic bounding boxes
# ---------------------------------------------------------------------------


def auto_bbox(spec: Union[FamilySpec, OuterOvalParams, EvenCircleParams, OddCircleParams]) -> Rect:
    """Integer rectangle guaranteed to contain every bounded Hessian-curve component.

    Outer family: the ovals live between the extreme vertical lines and the
    two sloped lines, so the corners of that strip plus unit slack suffice.
    Circle families: every circle radius is bounded by the largest isolated
    root of the radial profiles, plus unit slack.
    """
    params = spec.params if isinstance(spec, FamilySpec) else spec
    if isinstance(params, OuterOvalParams):
        xlo = min([*params.a_list, Fraction(0)]) - 1
        xhi = max([*params.b_list, Fraction(0)]) + 1
        corner_ys = [s * x for s in (params.a, params.b) for x in (xlo, xhi)]
        ylo = Fraction(math.floor(min(corner_ys))) - 1
        yhi = Fraction(math.ceil(max(corner_ys))) + 1
        return (
            Fraction(math.floor(xlo)),
            Fraction(math.ceil(xhi)),
            ylo,
            yhi,
        )
    if isinstance(params, EvenCircleParams):
        pair = radial_even(params)
    else:
        pair = radial_odd(params)
    extent = Fraction(1)
    for profile in (pair.s_tilde, pair.t_tilde):
        if profile.degree >= 1:
            for iv in isolate_roots(profile):
                extent = max(extent, abs(iv.lo), abs(iv.hi))
    half = Fraction(math.ceil(extent)) + 1
    return (-half, half, -half, half)
