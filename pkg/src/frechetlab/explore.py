"""Sampling of witness graphs: point clouds, growth tables, coverage grids
and images of the graph-closure parametrization off its critical variety.

Everything in here stays exact until the reporting layer renders
decimals.  Two scaling notes:

* ``sample_graph`` materializes its cloud and is meant for moderate
  height bounds; ``iter_graph_points`` streams the same points (same
  set, same values) without holding them, which is what growth and
  coverage scans use when the bound is large.
* For the plain surd-part witness the growth table takes a provably
  equivalent shortcut: the sample value at p + q*sqrt(d) is exactly q
  and canonical representations are unique, so sup |f| is the largest
  |q| whose fiber reaches the window and the row count is a coprimality
  count.  The test suite pins this shortcut to the generic path on
  small bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from . import heightscan
from .diffs import as_evaluator
from .errors import DimensionMismatchError, InvalidWindowError
from .interp import GridSpec, phi_gamma_eval
from .poly import TensorPoly
from .scalars import (DEFAULT_D, QuadScalar, as_quad, enumerate_by_height,
                      _endpoint)
from .shear import xi_determinant
from .witness import SurdPart, WitnessModel

Window = tuple


@dataclass
class PointCloud:
    """A finite batch of exact points plus the parameters that made it."""

    dim: int
    columns: tuple
    points: list
    provenance: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.points)


@dataclass
class GrowthTable:
    """Rows (height bound, sup |f| over the sample, sample count).

    The sup column is None exactly when the sampled set is empty; over
    nested samples it can only grow, which is the empirical face of
    local unboundedness.
    """

    rows: list
    provenance: dict = field(default_factory=dict)


@dataclass
class CoverageGrid:
    """Occupancy of an r x r cell grid over a rectangle by a point cloud."""

    rect: tuple
    resolution: int
    occupied: set

    @property
    def fraction(self) -> Fraction:
        return Fraction(len(self.occupied), self.resolution ** 2)


def _normalize_windows(window, n: int, d: int) -> list[tuple[QuadScalar, QuadScalar]]:
    if n < 1:
        raise DimensionMismatchError("need at least one axis")
    pairs = window
    if len(window) == 2 and not isinstance(window[0], (tuple, list)):
        pairs = [window] * n
    if len(pairs) != n:
        raise InvalidWindowError(f"need {n} windows, got {len(pairs)}")
    out = []
    for lo, hi in pairs:
        lo_q, hi_q = as_quad(lo, d), as_quad(hi, d)
        if not (lo_q < hi_q):
            raise InvalidWindowError(f"empty window: lo={lo_q} >= hi={hi_q}")
        out.append((lo_q, hi_q))
    return out


def _model_arity(f, window) -> int:
    if isinstance(f, WitnessModel):
        return f.arity()
    if len(window) == 2 and not isinstance(window[0], (tuple, list)):
        return 1
    return len(window)


def iter_graph_points(f, window, H: int, d: int = DEFAULT_D) -> Iterator[tuple]:
    """Stream the graph sample of sample_graph without materializing it."""
    n = _model_arity(f, window)
    windows = _normalize_windows(window, n, d)
    ev = as_evaluator(f)
    if H < 1:
        raise InvalidWindowError(f"height bound must be >= 1, got {H}")
    if n == 1:
        lo, hi = windows[0]
        for pn, pd, qn, qd in heightscan.iter_canonical(
                H, _endpoint(lo), _endpoint(hi), d):
            x = QuadScalar(Fraction(pn, pd), Fraction(qn, qd), d)
            yield (x, ev((x,)))
        return
    axes = [enumerate_by_height(H, w, d) for w in windows]

    def rec(prefix: list, k: int):
        if k == n:
            pt = tuple(prefix)
            yield pt + (ev(pt),)
            return
        for z in axes[k]:
            yield from rec(prefix + [z], k + 1)

    yield from rec([], 0)


def sample_graph(f, window, H: int, d: int = DEFAULT_D) -> PointCloud:
    """Exact graph sample {(x, f(x))} over height-bounded domain points.

    One-dimensional domains come out sorted by x; higher dimensions use
    the lexicographic product of the per-axis orders.  Identical
    parameters always produce the identical cloud.
    """
    n = _model_arity(f, window)
    points = list(iter_graph_points(f, window, H, d))
    if n == 1:
        points.sort(key=lambda pt: heightscan.value_key(
            pt[0].rat.numerator, pt[0].rat.denominator,
            pt[0].surd.numerator, pt[0].surd.denominator, d))
    columns = tuple(f"x{i+1}" for i in range(n)) + ("f",)
    provenance = {
        "model": f.to_text() if isinstance(f, WitnessModel) else repr(f),
        "window": _window_text(window, n, d),
        "height": H,
        "d": d,
    }
    return PointCloud(n + 1, columns, points, provenance)


def _window_text(window, n: int, d: int) -> str:
    windows = _normalize_windows(window, n, d)
    return ";".join(f"{lo},{hi}" for lo, hi in windows)


def _as_pure_surd(f) -> Optional[SurdPart]:
    if isinstance(f, WitnessModel):
        s = f.simplify()
        if isinstance(s, SurdPart):
            return s
    return None


def growth_table(f, window, heights: Sequence[int], d: int = DEFAULT_D) -> GrowthTable:
    """sup |f| and sample count over the window for each height bound.

    Heights must be strictly increasing; the sup column is then
    nondecreasing because the sampled sets are nested.
    """
    if not heights:
        raise InvalidWindowError("need at least one height")
    if any(b <= a for a, b in zip(heights, heights[1:])):
        raise InvalidWindowError(f"heights must be strictly increasing: {heights}")
    if any(h < 1 for h in heights):
        raise InvalidWindowError("height bounds must be >= 1")
    n = _model_arity(f, window)
    windows = _normalize_windows(window, n, d)
    surd = _as_pure_surd(f)
    rows = []
    if surd is not None and surd.axis == 1 and n == 1:
        lo, hi = _endpoint(windows[0][0]), _endpoint(windows[0][1])
        for H in heights:
            sup = heightscan.sup_abs_surd(H, lo, hi, d)
            count = heightscan.count_canonical(H, lo, hi, d)
            rows.append((H, None if sup is None else QuadScalar(sup, 0, d), count))
    else:
        for H in heights:
            sup: Optional[QuadScalar] = None
            count = 0
            for pt in iter_graph_points(f, window, H, d):
                count += 1
                v = abs(pt[-1])
                if sup is None or sup < v:
                    sup = v
            rows.append((H, sup, count))
    provenance = {
        "model": f.to_text() if isinstance(f, WitnessModel) else repr(f),
        "window": _window_text(window, n, d),
        "heights": list(heights),
        "d": d,
    }
    return GrowthTable(rows, provenance)


def coverage_fraction(cloud, rect, r: int, axes: tuple[int, int] = None) -> CoverageGrid:
    """Mark every r x r cell of the rectangle containing a cloud point.

    ``cloud`` may be a PointCloud or any iterable of coordinate tuples;
    ``axes`` picks the two coordinates to project (default: first and
    last).  Points on the closed upper edges clamp into the last cell,
    so the rectangle's corners count as covered.  All cell arithmetic is
    exact; rectangle bounds must be rational (cells are plotting
    artifacts, irrational grid lines have no use here).
    """
    if r < 2:
        raise InvalidWindowError(f"resolution must be >= 2, got {r}")
    (xlo, xhi), (ylo, yhi) = rect
    xlo, xhi, ylo, yhi = (as_quad(v) for v in (xlo, xhi, ylo, yhi))
    if not (xlo < xhi) or not (ylo < yhi):
        raise InvalidWindowError(f"degenerate rectangle {rect}")
    if xlo.surd or xhi.surd or ylo.surd or yhi.surd:
        raise InvalidWindowError("rectangle bounds must be rational")
    points = cloud.points if isinstance(cloud, PointCloud) else cloud
    occupied: set = set()

    def cell_fn(lo: Fraction, hi: Fraction):
        scale = r / (hi - lo)

        def cell(v, d: int) -> int:
            # floor((v - lo) * r / w) from the parts of v, one isqrt each
            a = (v.rat - lo) * scale
            b = v.surd * scale
            k = heightscan.floor_quad(a.numerator * b.denominator,
                                      b.numerator * a.denominator,
                                      a.denominator * b.denominator, d)
            if k == r and v.rat == hi and not v.surd:
                return r - 1  # the closed upper edge clamps into the last cell
            return k if 0 <= k < r else -1

        return cell

    x_cell = cell_fn(xlo.rat, xhi.rat)
    y_cell = cell_fn(ylo.rat, yhi.rat)
    for pt in points:
        if axes is None:
            x, y = pt[0], pt[-1]
        else:
            x, y = pt[axes[0] - 1], pt[axes[1] - 1]
        x, y = as_quad(x), as_quad(y)
        i = x_cell(x, x.d)
        if i < 0:
            continue
        j = y_cell(y, y.d)
        if j >= 0:
            occupied.add((i, j))
    return CoverageGrid(((xlo, xhi), (ylo, yhi)), r, occupied)


def image_cloud(P: TensorPoly, grid: GridSpec, s: int,
                t_samples: Iterable) -> PointCloud:
    """phi_gamma images of the parameter samples lying off the variety.

    Samples where the Jacobian determinant vanishes (exactly) are
    skipped and counted; off the variety the map is locally open, which
    is what makes these images interesting.
    """
    xi = xi_determinant(P, s)
    naxes = grid.n + 1
    points = []
    skipped = 0
    total = 0
    for t in t_samples:
        total += 1
        ts = tuple(as_quad(x, grid.d) for x in t)
        if len(ts) != naxes:
            raise DimensionMismatchError(
                f"parameter point needs {naxes} coordinates, got {len(ts)}")
        if not xi.eval(ts):
            skipped += 1
            continue
        points.append(phi_gamma_eval(P, grid, ts))
    columns = tuple(f"y{i+1}" for i in range(grid.n)) + ("p",)
    provenance = {
        "axis": s,
        "skipped_on_variety": skipped,
        "total_samples": total,
        "d": grid.d,
    }
    return PointCloud(naxes, columns, points, provenance)
