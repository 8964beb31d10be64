"""Deterministic pseudo-random generation for tests and the CLI.

A 32-bit linear congruential generator with the Numerical Recipes
constants

    state <- (1664525 * state + 1013904223) mod 2**32

drives everything.  Derived draws use plain modulo reduction, so any
implementation, in any language, that follows these rules reproduces the
exact same scalars, points and grids from the seed alone:

* below(n)         = next_u32() mod n
* int_range(a, b)  = a + below(b - a + 1)
* fraction(N, D)   = int_range(-N, N) / int_range(1, D)   (numerator first)
* quad(N, D)       = fraction(N, D) + fraction(N, D) * sqrt(d)
                     (rational part first)

"nonzero" variants redraw until the value is nonzero.
"""

from __future__ import annotations

from fractions import Fraction

from .interp import GridSpec
from .poly import TensorPoly
from .scalars import DEFAULT_D, QuadScalar


class Lcg:
    MULTIPLIER = 1664525
    INCREMENT = 1013904223
    MODULUS = 1 << 32

    def __init__(self, seed: int):
        self.state = seed % self.MODULUS

    def next_u32(self) -> int:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) % self.MODULUS
        return self.state

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u32() % n

    def int_range(self, lo: int, hi: int) -> int:
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.below(hi - lo + 1)

    # -- scalars ------------------------------------------------------------

    def fraction(self, max_num: int = 9, max_den: int = 4) -> Fraction:
        return Fraction(self.int_range(-max_num, max_num),
                        self.int_range(1, max_den))

    def quad(self, d: int = DEFAULT_D, max_num: int = 9,
             max_den: int = 4) -> QuadScalar:
        rat = self.fraction(max_num, max_den)
        surd = self.fraction(max_num, max_den)
        return QuadScalar(rat, surd, d)

    def nonzero_quad(self, d: int = DEFAULT_D, max_num: int = 9,
                     max_den: int = 4) -> QuadScalar:
        while True:
            z = self.quad(d, max_num, max_den)
            if z:
                return z

    # -- aggregates -----------------------------------------------------------

    def point(self, n: int, d: int = DEFAULT_D, max_num: int = 9,
              max_den: int = 4) -> tuple:
        return tuple(self.quad(d, max_num, max_den) for _ in range(n))

    def pair_sample(self, n: int, count: int, d: int = DEFAULT_D,
                    max_num: int = 9, max_den: int = 4) -> list:
        """(x, h) pairs for the fixed-step checker; h is drawn like x."""
        return [(self.point(n, d, max_num, max_den),
                 self.point(n, d, max_num, max_den)) for _ in range(count)]

    def distinct_steps(self, n: int, order: int, d: int = DEFAULT_D,
                       max_num: int = 9, max_den: int = 4) -> tuple:
        """``order`` pairwise-distinct step vectors (redrawing collisions)."""
        steps: list[tuple] = []
        while len(steps) < order:
            h = self.point(n, d, max_num, max_den)
            if h not in steps:
                steps.append(h)
        return tuple(steps)

    def grid_spec(self, n: int, m: int, d: int = DEFAULT_D, max_num: int = 2,
                  max_den: int = 2) -> GridSpec:
        a = self.point(n, d, max_num, max_den)
        h = tuple(self.nonzero_quad(d, max_num, max_den) for _ in range(n + 1))
        gamma = []
        while len(gamma) < n + 1:
            v = self.point(n, d, max_num, max_den)
            if any(v):
                gamma.append(v)
        return GridSpec(a, h, tuple(gamma), m, d)

    def tensor_poly(self, nvars: int, maxdeg: int, d: int = DEFAULT_D,
                    max_num: int = 10, max_den: int = 10) -> TensorPoly:
        size = (maxdeg + 1) ** nvars
        return TensorPoly(nvars, maxdeg,
                          [self.quad(d, max_num, max_den) for _ in range(size)],
                          d)
