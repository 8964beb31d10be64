"""Tensor-product Lagrange interpolation on full grids, and its extension
checks.

Given a base point a, nonzero steps h_1..h_{n+1}, nonzero directions
v_1..v_{n+1} and a degree bound m, the unique member of the
per-variable-degree space interpolating

    P(i_1 h_1, ..., i_{n+1} h_{n+1}) = f(a + sum_k i_k h_k v_k),
    0 <= i_k <= m,

is built by successive exact univariate Newton fits along each axis.
Any exact method would do — the interpolant is unique — but the Newton
form keeps intermediate rationals small compared to inverting a
Vandermonde system.

The two extension checks probe what makes solutions of the difference
equation special: the interpolant keeps matching f on every *integer*
multi-index (not just 0..m), and rebuilding it on refined steps h_k/p_k
reproduces the very same polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

from .diffs import as_evaluator
from .errors import DimensionMismatchError, InvalidGridError
from .poly import TensorPoly, poly_equal
from .scalars import DEFAULT_D, QuadScalar, as_quad


@dataclass(frozen=True)
class GridSpec:
    """The interpolation frame (a, h, gamma, m) for an n-variate function.

    a has length n; h and gamma have length n+1; every step and every
    direction vector must be nonzero.
    """

    a: tuple
    h: tuple
    gamma: tuple
    m: int
    d: int = DEFAULT_D

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(as_quad(x, self.d) for x in self.a))
        object.__setattr__(self, "h", tuple(as_quad(x, self.d) for x in self.h))
        object.__setattr__(
            self, "gamma",
            tuple(tuple(as_quad(x, self.d) for x in v) for v in self.gamma))
        n = len(self.a)
        if n < 1:
            raise InvalidGridError("base point must have at least one coordinate")
        if len(self.h) != n + 1:
            raise InvalidGridError(f"need {n + 1} steps, got {len(self.h)}")
        if len(self.gamma) != n + 1:
            raise InvalidGridError(
                f"need {n + 1} direction vectors, got {len(self.gamma)}")
        if any(not hk for hk in self.h):
            raise InvalidGridError("every step h_k must be nonzero")
        for v in self.gamma:
            if len(v) != n:
                raise InvalidGridError("direction vectors live in R^n")
            if not any(v):
                raise InvalidGridError("every direction vector must be nonzero")
        if self.m < 0:
            raise InvalidGridError(f"degree bound must be >= 0, got {self.m}")

    @property
    def n(self) -> int:
        return len(self.a)

    def node(self, index: Sequence[int]) -> tuple:
        """The domain point a + sum_k index_k * h_k * v_k."""
        if len(index) != self.n + 1:
            raise DimensionMismatchError(
                f"need {self.n + 1} indices, got {len(index)}")
        pt = list(self.a)
        for k, ik in enumerate(index):
            c = self.h[k] * ik
            for j in range(self.n):
                pt[j] = pt[j] + c * self.gamma[k][j]
        return tuple(pt)


@dataclass
class SampleTensor:
    """Dense grid samples f_{i_1..i_{n+1}}, flat in row-major index order."""

    naxes: int
    m: int
    values: list

    @classmethod
    def from_function(cls, f, grid: GridSpec) -> "SampleTensor":
        ev = as_evaluator(f)
        naxes = grid.n + 1
        values = [ev(grid.node(idx))
                  for idx in product(range(grid.m + 1), repeat=naxes)]
        return cls(naxes, grid.m, values)


def _newton_fit(nodes: list[QuadScalar], values: list[QuadScalar],
                d: int) -> list[QuadScalar]:
    """Exact monomial coefficients of the unique interpolant of degree
    <= len(nodes)-1 through (nodes[i], values[i])."""
    k = len(nodes)
    dd = list(values)
    # divided differences in place: dd[i] ends as f[x_0..x_i]
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level])
    coeffs = [as_quad(0, d) for _ in range(k)]
    basis = [as_quad(1, d)] + [as_quad(0, d)] * (k - 1)  # running prod (x - x_j)
    deg = 0
    for i in range(k):
        for j in range(deg + 1):
            coeffs[j] = coeffs[j] + dd[i] * basis[j]
        if i < k - 1:
            xi = nodes[i]
            for j in range(deg + 1, 0, -1):
                basis[j] = basis[j - 1] - xi * basis[j]
            basis[0] = -xi * basis[0]
            deg += 1
    return coeffs


def fit_tensor_grid(samples: SampleTensor, h: Sequence, m: int,
                    d: int = DEFAULT_D) -> TensorPoly:
    """The unique polynomial with per-variable degree <= m matching
    samples[i_1..i_{n+1}] at the nodes (i_1 h_1, ..., i_{n+1} h_{n+1}).

    Fits one axis at a time; the result is independent of the axis order.
    """
    naxes = samples.naxes
    if len(h) != naxes:
        raise InvalidGridError(f"need {naxes} steps, got {len(h)}")
    hs = [as_quad(x, d) for x in h]
    if any(not x for x in hs):
        raise InvalidGridError("every step must be nonzero")
    if samples.m != m:
        raise InvalidGridError(f"sample tensor was built for m={samples.m}, not {m}")
    size = (m + 1) ** naxes
    if len(samples.values) != size:
        raise InvalidGridError(
            f"need {size} samples for m={m}, naxes={naxes}; "
            f"got {len(samples.values)}")
    data = [as_quad(v, d) for v in samples.values]
    m1 = m + 1
    for axis in range(naxes):
        nodes = [hs[axis] * i for i in range(m1)]
        stride = m1 ** (naxes - axis - 1)
        block = stride * m1
        for base in range(0, size, block):
            for off in range(stride):
                start = base + off
                fiber = [data[start + i * stride] for i in range(m1)]
                for i, c in enumerate(_newton_fit(nodes, fiber, d)):
                    data[start + i * stride] = c
    return TensorPoly(naxes, m, data, d)


def build_interpolant(f, grid: GridSpec) -> TensorPoly:
    """Sample f on the grid and fit; the polynomial the lemmas study."""
    samples = SampleTensor.from_function(f, grid)
    return fit_tensor_grid(samples, grid.h, grid.m, grid.d)


@dataclass
class ExtensionReport:
    """Outcome of an integer-extension check over a finite index box."""

    ok: bool
    checked: int
    counterexample: Optional[tuple] = None  # (index, P value, f value)


def check_integer_extension(P: TensorPoly, f, grid: GridSpec,
                            box: tuple[int, int]) -> ExtensionReport:
    """Does P(i_1 h_1, ...) equal f(a + sum i_k h_k v_k) on the whole box?

    ``box`` is the inclusive (lo, hi) index range used on every axis.
    The comparison is exact; the first failure in lexicographic index
    order is reported.  P is specialized one axis at a time so the
    leading axes are not re-evaluated per grid point.
    """
    lo, hi = box
    if lo > hi:
        raise InvalidGridError(f"empty box {box}")
    ev = as_evaluator(f)
    naxes = grid.n + 1
    state = {"checked": 0}

    def walk(partial: TensorPoly, idx: list[int]):
        axis = len(idx)
        if axis == naxes - 1:
            for i in range(lo, hi + 1):
                state["checked"] += 1
                lhs = partial.eval([grid.h[axis] * i])
                full = idx + [i]
                rhs = ev(grid.node(full))
                if lhs != rhs:
                    return (tuple(full), lhs, rhs)
            return None
        for i in range(lo, hi + 1):
            bad = walk(partial.restrict({1: grid.h[axis] * i}), idx + [i])
            if bad is not None:
                return bad
        return None

    counterexample = walk(P, [])
    if counterexample is not None:
        return ExtensionReport(False, state["checked"], counterexample)
    return ExtensionReport(True, state["checked"], None)


def check_rational_refinement(f, grid: GridSpec,
                              denominators: Sequence[int]) -> bool:
    """Rebuild the interpolant on steps h_k / p_k and compare exactly.

    For solutions of the difference equation the refined polynomial is
    the same object, which is what lets the grid identity spread from
    integer to rational multi-indices.
    """
    if len(denominators) != grid.n + 1:
        raise InvalidGridError(
            f"need {grid.n + 1} denominators, got {len(denominators)}")
    if any(p == 0 for p in denominators):
        raise InvalidGridError("denominators must be nonzero")
    P = build_interpolant(f, grid)
    refined = GridSpec(grid.a,
                       tuple(hk / p for hk, p in zip(grid.h, denominators)),
                       grid.gamma, grid.m, grid.d)
    P_star = build_interpolant(f, refined)
    return poly_equal(P_star, P)


def phi_gamma_eval(P: TensorPoly, grid: GridSpec, t: Sequence) -> tuple:
    """The graph-closure parametrization t -> (a + sum t_k v_k, P(t))."""
    naxes = grid.n + 1
    if len(t) != naxes:
        raise DimensionMismatchError(f"need {naxes} coordinates, got {len(t)}")
    ts = [as_quad(x, grid.d) for x in t]
    pt = list(grid.a)
    for k, tk in enumerate(ts):
        for j in range(grid.n):
            pt[j] = pt[j] + tk * grid.gamma[k][j]
    return tuple(pt) + (P.eval(ts),)
