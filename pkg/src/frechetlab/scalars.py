"""Exact scalars: arbitrary-precision rationals and the field Q(sqrt(d)).

Every computation in this package happens over the real quadratic field
Q(sqrt(d)) with a square-free d >= 2 (default 2).  Elements are kept in
the unique canonical form a + b*sqrt(d) with a, b rational, so equality,
ordering and sign are all decided exactly — no floating point enters the
core.  Floats appear only when a value is rendered for CSV or plots.

``Rational`` is the standard library Fraction: it already maintains the
canonical-form invariants (positive denominator, reduced terms) this
package relies on.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt

from . import heightscan
from .errors import InvalidWindowError

Rational = Fraction

DEFAULT_D = 2

_RationalLike = (int, Fraction)


def is_square_free(n: int) -> bool:
    if n < 1:
        return False
    k, p = n, 2
    while p * p <= k:
        if k % (p * p) == 0:
            return False
        if k % p == 0:
            k //= p
        p += 1
    return True


_KNOWN_D: set = set()


def _check_d(d: int) -> int:
    # memoized: constructors run in tight enumeration loops
    if d in _KNOWN_D:
        return d
    if not isinstance(d, int) or d < 2 or not is_square_free(d):
        raise ValueError(f"d must be a square-free integer >= 2, got {d!r}")
    _KNOWN_D.add(d)
    return d


@total_ordering
class QuadScalar:
    """An element rat + surd*sqrt(d) of Q(sqrt(d)).

    Instances are immutable by convention and hashable; all arithmetic
    is exact.  Mixing two QuadScalars with different d is an error;
    plain ints and Fractions coerce to the other operand's field.
    """

    __slots__ = ("rat", "surd", "d")

    def __init__(self, rat=0, surd=0, d: int = DEFAULT_D):
        # type-exact fast paths: these run per point in enumeration loops
        self.rat = rat if type(rat) is Fraction else Fraction(rat)
        self.surd = surd if type(surd) is Fraction else Fraction(surd)
        self.d = _check_d(d)

    @classmethod
    def sqrt_d(cls, d: int = DEFAULT_D) -> "QuadScalar":
        return cls(0, 1, d)

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise ValueError(
                    f"cannot mix Q(sqrt {self.d}) with Q(sqrt {other.d})")
            return other
        if isinstance(other, _RationalLike):
            return QuadScalar(other, 0, self.d)
        return None

    # -- ring / field operations ------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.rat + o.rat, self.surd + o.surd, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.rat, -self.surd, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.rat - o.rat, self.surd - o.surd, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(
            self.rat * o.rat + self.surd * o.surd * self.d,
            self.rat * o.surd + self.surd * o.rat,
            self.d,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm rat**2 - d*surd**2; zero only for the zero element."""
        return self.rat * self.rat - self.surd * self.surd * self.d

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        return QuadScalar(self.rat / n, -self.surd / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadScalar(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- exact comparisons --------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}, decided by integer arithmetic only."""
        a, b = self.rat, self.surd
        if b == 0:
            return -1 if a < 0 else (0 if a == 0 else 1)
        if a == 0:
            return -1 if b < 0 else 1
        sa = 1 if a > 0 else -1
        sb = 1 if b > 0 else -1
        if sa == sb:
            return sa
        # signs conflict: |a| vs |b|*sqrt(d) decided by a^2 vs d*b^2
        # (equality is impossible: sqrt(d) is irrational)
        return sa if a * a > self.d * b * b else sb

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rat == o.rat and self.surd == o.surd

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self.surd == 0:
            return hash(self.rat)
        return hash((self.rat, self.surd, self.d))

    def __bool__(self):
        return self.rat != 0 or self.surd != 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- rounding and rendering ---------------------------------------------

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.rat, -self.surd, self.d)

    def floor(self) -> int:
        return heightscan.floor_quad(
            self.rat.numerator * self.surd.denominator,
            self.surd.numerator * self.rat.denominator,
            self.rat.denominator * self.surd.denominator,
            self.d,
        )

    def ceil(self) -> int:
        return -(-self).floor()

    def __float__(self) -> float:
        return float(self.rat) + float(self.surd) * self.d ** 0.5

    def __repr__(self):
        return f"QuadScalar({self.rat!r}, {self.surd!r}, d={self.d})"

    def __str__(self):
        """Canonical text: '0', '3/2', 'sqrt(2)', '-5/7*sqrt(2)', '1 + sqrt(2)'."""
        if self.surd == 0:
            return str(self.rat)
        if self.surd == 1:
            s = f"sqrt({self.d})"
        elif self.surd == -1:
            s = f"-sqrt({self.d})"
        else:
            s = f"{self.surd}*sqrt({self.d})"
        if self.rat == 0:
            return s
        if s.startswith("-"):
            return f"{self.rat} - {s[1:]}"
        return f"{self.rat} + {s}"


def as_quad(value, d: int = DEFAULT_D) -> QuadScalar:
    """Coerce an int, Fraction or QuadScalar into Q(sqrt(d))."""
    if isinstance(value, QuadScalar):
        return value
    return QuadScalar(value, 0, d)


def quad_conjugate(z: QuadScalar) -> QuadScalar:
    """Galois conjugate a + b*sqrt(d) -> a - b*sqrt(d).

    Involutive, additive and multiplicative; its fixed points are the
    rationals.
    """
    return z.conjugate()


def surd_part(z: QuadScalar) -> Fraction:
    """The coefficient b of sqrt(d) in z = a + b*sqrt(d).

    Q-linear but wildly discontinuous as a map R -> R, which is exactly
    why it powers every non-polynomial witness in this package.
    """
    return z.surd


def height(z: QuadScalar) -> int:
    """max(|numerator|, denominator) over the four canonical integers of z.

    height(0) = 1 because 0 is stored as 0/1.  Heights give a finite,
    exhaustively enumerable filtration of Q + Q*sqrt(d).
    """
    return max(abs(z.rat.numerator), z.rat.denominator,
               abs(z.surd.numerator), z.surd.denominator)


def _endpoint(value) -> tuple[Fraction, Fraction]:
    if isinstance(value, QuadScalar):
        return value.rat, value.surd
    return Fraction(value), Fraction(0)


def enumerate_by_height(H: int, window, d: int = DEFAULT_D) -> list[QuadScalar]:
    """All z = p + q*sqrt(d) with height(z) <= H and z in the closed window.

    ``window`` is a (lo, hi) pair of ints, Fractions or QuadScalars with
    lo < hi.  The result is sorted by real value (exactly); for identical
    parameters the output is identical, which the CLI's determinism
    guarantee leans on.
    """
    if H < 1:
        raise InvalidWindowError(f"height bound must be >= 1, got {H}")
    lo, hi = window
    lo_q, hi_q = as_quad(lo, d), as_quad(hi, d)
    if not (lo_q < hi_q):
        raise InvalidWindowError(f"empty window: lo={lo_q} >= hi={hi_q}")
    lo_e, hi_e = _endpoint(lo_q), _endpoint(hi_q)
    out = []
    for pn, pd, qn, qd in heightscan.iter_canonical(H, lo_e, hi_e, d):
        key = heightscan.value_key(pn, pd, qn, qd, d)
        out.append((key, QuadScalar(Fraction(pn, pd), Fraction(qn, qd), d)))
    out.sort(key=lambda t: t[0])
    return [z for _, z in out]
