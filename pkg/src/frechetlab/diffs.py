"""Forward difference operators and the sampled Fréchet-equation checker.

Both the fixed-step operator (binomial expansion) and the variable-step
operator (nested first differences) are provided even though they are
classically equivalent: the equivalence itself is one of the properties
the test suite exercises on witnesses.

Points and steps are tuples of QuadScalar (a bare scalar is accepted for
one-dimensional domains).  Functions are anything with an ``eval(point)``
method (witness models) or a plain callable on points.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Optional, Sequence

from .errors import DimensionMismatchError
from .scalars import DEFAULT_D, QuadScalar, as_quad

Point = tuple[QuadScalar, ...]


def as_point(x, d: int = DEFAULT_D) -> Point:
    if isinstance(x, (tuple, list)):
        return tuple(as_quad(v, d) for v in x)
    return (as_quad(x, d),)


def as_evaluator(f) -> Callable[[Point], QuadScalar]:
    if hasattr(f, "eval"):
        return f.eval
    if callable(f):
        return f
    raise TypeError(f"not evaluatable: {f!r}")


def _add(x: Point, y: Point) -> Point:
    if len(x) != len(y):
        raise DimensionMismatchError(
            f"point arity {len(x)} vs step arity {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def _mul(k: int, y: Point) -> Point:
    return tuple(b * k for b in y)


def fixed_step_diff(f, x, h, k: int, d: int = DEFAULT_D) -> QuadScalar:
    """The k-th forward difference with fixed step h.

    Computed by the expanded binomial sum
    sum_{j=0..k} C(k,j) (-1)^(k-j) f(x + j*h), which equals the k-fold
    application of the first difference.
    """
    if k < 1:
        raise ValueError(f"difference order must be >= 1, got {k}")
    ev = as_evaluator(f)
    x, h = as_point(x, d), as_point(h, d)
    acc = as_quad(0, d)
    for j in range(k + 1):
        term = ev(_add(x, _mul(j, h))) * comb(k, j)
        acc = acc + (term if (k - j) % 2 == 0 else -term)
    return acc


def variable_step_diff(f, x, steps: Sequence, d: int = DEFAULT_D) -> QuadScalar:
    """The nested difference with (possibly distinct) steps h1, ..., hk.

    Defined inductively: one step gives f(x+h) - f(x); more steps apply
    the first difference in h1 to the remaining nested difference.  When
    all steps coincide this equals fixed_step_diff of the same order.
    """
    if not steps:
        raise ValueError("need at least one step")
    ev = as_evaluator(f)
    x = as_point(x, d)
    hs = [as_point(h, d) for h in steps]

    def rec(base: Point, remaining: int) -> QuadScalar:
        if remaining == 0:
            return ev(base)
        h = hs[len(hs) - remaining]
        return rec(_add(base, h), remaining - 1) - rec(base, remaining - 1)

    return rec(x, len(hs))


@dataclass
class FrechetReport:
    """Outcome of checking the order-(m+1) equation on a finite sample.

    ``first_violation`` is None exactly when every tested difference is
    zero; otherwise it holds the offending (x, h, value) with the lowest
    sample index.
    """

    order: int
    tested_pairs: int
    first_violation: Optional[tuple[Point, Point, QuadScalar]] = None

    @property
    def ok(self) -> bool:
        return self.first_violation is None


def check_frechet(f, m: int, sample: Sequence, d: int = DEFAULT_D) -> FrechetReport:
    """Evaluate the order-(m+1) fixed-step equation on every (x, h) pair.

    The sample is an explicit caller-supplied list: the equation
    quantifies over the whole plane, which no machine can check, so the
    finite slice that was actually inspected is part of the result.
    """
    if not sample:
        raise ValueError("sample must be nonempty")
    order = m + 1
    for i, (x, h) in enumerate(sample):
        value = fixed_step_diff(f, x, h, order, d)
        if value:
            return FrechetReport(order, i + 1, (as_point(x, d), as_point(h, d), value))
    return FrechetReport(order, len(sample), None)


def check_frechet_variable(f, m: int, sample: Sequence,
                           d: int = DEFAULT_D) -> FrechetReport:
    """Variable-step variant: sample items are (x, (h1, ..., h_{m+1}))."""
    if not sample:
        raise ValueError("sample must be nonempty")
    order = m + 1
    for i, (x, steps) in enumerate(sample):
        if len(steps) != order:
            raise DimensionMismatchError(
                f"sample {i}: need {order} steps, got {len(steps)}")
        value = variable_step_diff(f, x, steps, d)
        if value:
            return FrechetReport(
                order, i + 1,
                (as_point(x, d), tuple(as_point(s, d) for s in steps), value))
    return FrechetReport(order, len(sample), None)
