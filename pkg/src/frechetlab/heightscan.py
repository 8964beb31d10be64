"""Integer-level scans of the height filtration of Q + Q*sqrt(d).

A point p + q*sqrt(d) is stored as the four integers (pn, pd, qn, qd) of
its canonical fractions p = pn/pd, q = qn/qd; its height is
max(|pn|, pd, |qn|, qd).  The routines here never build Fraction or
QuadScalar objects in their hot loops, which is what makes exhaustive
scans up to heights of a few hundred affordable.  Floors and ceilings of
quadratic irrationals are computed with math.isqrt, so every comparison
is exact.

Windows are closed intervals [lo, hi] whose endpoints are given as
rational pairs (rat, surd) meaning rat + surd*sqrt(d).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator

Endpoint = tuple[Fraction, Fraction]


def floor_root(b: int, d: int) -> int:
    """floor(b * sqrt(d)) for any integer b, square-free d >= 2."""
    if b >= 0:
        return isqrt(d * b * b)
    # sqrt(d*b*b) is never an integer for b != 0, so the ceiling is isqrt+1
    return -isqrt(d * b * b) - 1


def floor_quad(a: int, b: int, c: int, d: int) -> int:
    """floor((a + b*sqrt(d)) / c) for integers with c > 0.

    Uses floor(u/c) = floor(floor(u)/c), valid for every real u and
    positive integer c.
    """
    return (a + floor_root(b, d)) // c


def ceil_quad(a: int, b: int, c: int, d: int) -> int:
    """ceil((a + b*sqrt(d)) / c) for integers with c > 0."""
    return -floor_quad(-a, -b, c, d)


def value_key(pn: int, pd: int, qn: int, qd: int, d: int, shift: int = 128) -> int:
    """A strictly monotone integer key for pn/pd + (qn/qd)*sqrt(d).

    The key is floor(value * 2**shift).  Two distinct points of height
    <= H differ by at least ~H**-9, far above 2**-128 for any height the
    scans here can reach, so sorting by this key sorts by real value.
    """
    return floor_quad(pn * qd << shift, qn * pd << shift, pd * qd, d)


def _p_bounds(lo: Endpoint, hi: Endpoint, qn: int, qd: int, pd: int,
              d: int) -> tuple[int, int]:
    """Integer range of pn with pn/pd in [lo - q*sqrt(d), hi - q*sqrt(d)]."""
    ln, ld = lo[0].numerator, lo[0].denominator
    ls_n, ls_d = lo[1].numerator, lo[1].denominator
    # (lo_rat + (lo_surd - q) sqrt d) * pd, over common denominator ld*ls_d*qd
    c = ld * ls_d * qd
    a = ln * ls_d * qd * pd
    b = (ls_n * qd - ls_d * qn) * ld * pd
    lo_n = ceil_quad(a, b, c, d)
    hn, hd = hi[0].numerator, hi[0].denominator
    hs_n, hs_d = hi[1].numerator, hi[1].denominator
    c = hd * hs_d * qd
    a = hn * hs_d * qd * pd
    b = (hs_n * qd - hs_d * qn) * hd * pd
    hi_n = floor_quad(a, b, c, d)
    return lo_n, hi_n


def _q_reachable(lo: Endpoint, hi: Endpoint, qn: int, qd: int, H: int,
                 d: int) -> bool:
    """True if some p with |p| <= H can land q's fiber inside the window."""
    lo_n, hi_n = _p_bounds(lo, hi, qn, qd, 1, d)
    return lo_n <= H and hi_n >= -H


def iter_canonical(H: int, lo: Endpoint, hi: Endpoint, d: int
                   ) -> Iterator[tuple[int, int, int, int]]:
    """All canonical (pn, pd, qn, qd) of height <= H with value in [lo, hi].

    Deterministic order: qd, then qn, then pd, then pn, all ascending.
    """
    for qd in range(1, H + 1):
        for qn in range(-H, H + 1):
            if gcd(qn, qd) != 1:
                continue
            if not _q_reachable(lo, hi, qn, qd, H, d):
                continue
            for pd in range(1, H + 1):
                lo_n, hi_n = _p_bounds(lo, hi, qn, qd, pd, d)
                if lo_n < -H:
                    lo_n = -H
                if hi_n > H:
                    hi_n = H
                for pn in range(lo_n, hi_n + 1):
                    if gcd(pn, pd) == 1:
                        yield pn, pd, qn, qd


def _mobius_tables(H: int) -> list[list[tuple[int, int]]]:
    """For each pd <= H the (divisor, mu) pairs over the radical of pd."""
    spf = list(range(H + 1))
    for p in range(2, isqrt(H) + 1):
        if spf[p] == p:
            for k in range(p * p, H + 1, p):
                if spf[k] == k:
                    spf[k] = p
    tables: list[list[tuple[int, int]]] = [[(1, 1)] for _ in range(H + 1)]
    for n in range(2, H + 1):
        primes = []
        k = n
        while k > 1:
            p = spf[k]
            primes.append(p)
            while k % p == 0:
                k //= p
        divs = [(1, 1)]
        for p in primes:
            divs += [(e * p, -mu) for e, mu in divs]
        tables[n] = divs
    return tables


def count_canonical(H: int, lo: Endpoint, hi: Endpoint, d: int) -> int:
    """len(list(iter_canonical(...))) without enumerating the pn loops."""
    tables = _mobius_tables(H)
    total = 0
    for qd in range(1, H + 1):
        for qn in range(-H, H + 1):
            if gcd(qn, qd) != 1:
                continue
            if not _q_reachable(lo, hi, qn, qd, H, d):
                continue
            for pd in range(1, H + 1):
                lo_n, hi_n = _p_bounds(lo, hi, qn, qd, pd, d)
                if lo_n < -H:
                    lo_n = -H
                if hi_n > H:
                    hi_n = H
                if lo_n > hi_n:
                    continue
                a1 = lo_n - 1
                for e, mu in tables[pd]:
                    total += mu * (hi_n // e - a1 // e)
    return total


def _exists_p(H: int, lo: Endpoint, hi: Endpoint, qn: int, qd: int,
              d: int) -> bool:
    """True if some canonical p of height <= H lands q's fiber in the window."""
    for pd in range(1, H + 1):
        lo_n, hi_n = _p_bounds(lo, hi, qn, qd, pd, d)
        if lo_n < -H:
            lo_n = -H
        if hi_n > H:
            hi_n = H
        for pn in range(lo_n, hi_n + 1):
            if gcd(pn, pd) == 1:
                return True
    return False


def sup_abs_surd(H: int, lo: Endpoint, hi: Endpoint, d: int) -> Fraction | None:
    """max |q| over height-<=H points of [lo, hi], or None if the set is empty.

    This is the exact supremum of |surd_part| over the enumerated sample:
    canonical representations are unique, so a point contributes exactly
    its own q.  Candidates are scanned in decreasing |q| and the first
    fiber that reaches the window wins.
    """
    magnitudes = []
    for qd in range(1, H + 1):
        for qn in range(1, H + 1):
            if gcd(qn, qd) == 1:
                magnitudes.append((Fraction(qn, qd), qn, qd))
    magnitudes.sort(key=lambda t: t[0], reverse=True)
    for q, qn, qd in magnitudes:
        if _exists_p(H, lo, hi, qn, qd, d) or _exists_p(H, lo, hi, -qn, qd, d):
            return q
    if _exists_p(H, lo, hi, 0, 1, d):
        return Fraction(0)
    return None
