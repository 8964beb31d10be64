"""Shear decomposition of bivariate polynomials and the Jacobian algebra
built on it.

Every bivariate P with per-variable degree <= m splits as

    P(x, y) = sum_{i=0..2m} A_i(x + y) * x**i,      deg A_i <= m,

obtained by substituting y -> t - x and collecting powers of x.  The
leading index N (largest i with A_i != 0) is what decides everything
downstream: N >= 1 means P is not a function of x+y alone, the slices
m_alpha(x) = sum A_i(alpha) x**i are nonconstant for alpha outside the
finite zero set of A_N, and the Jacobian determinant of the associated
plane map is the nonzero polynomial -sum_{k>=1} k A_k(x+y) x**(k-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Optional, Sequence

from .errors import DimensionMismatchError, InconsistentDecompositionError
from .interp import GridSpec, build_interpolant
from .poly import TensorPoly, UniPoly
from .scalars import DEFAULT_D, QuadScalar, as_quad, enumerate_by_height, height


@dataclass(frozen=True)
class ShearDecomposition:
    """Coefficients A_0..A_{2m} of P(x,y) = sum A_i(x+y) x^i.

    ``leading_index`` is the largest i with A_i nonzero, or -1 for the
    zero polynomial, so it is total.
    """

    m: int
    coefficients: tuple
    d: int = DEFAULT_D

    @property
    def leading_index(self) -> int:
        for i in range(len(self.coefficients) - 1, -1, -1):
            if not self.coefficients[i].is_zero():
                return i
        return -1

    def recompose(self) -> TensorPoly:
        """sum A_i(x+y) x^i, for round-trip verification."""
        acc = _grid(3 * self.m + 1, self.d)
        for i, a in enumerate(self.coefficients):
            for j, c in enumerate(a.coeffs):
                if not c:
                    continue
                # c * (x+y)^j * x^i spread by the binomial theorem
                for s in range(j + 1):
                    acc[i + s][j - s] = acc[i + s][j - s] + c * comb(j, s)
        return _from_grid(acc, self.d)


def _grid(size: int, d: int) -> list:
    zero = as_quad(0, d)
    return [[zero] * size for _ in range(size)]


def _from_grid(acc: list, d: int) -> TensorPoly:
    bound = 0
    for ex, row in enumerate(acc):
        for ey, c in enumerate(row):
            if c:
                bound = max(bound, ex, ey)
    out = TensorPoly.zero(2, bound, d)
    for ex, row in enumerate(acc[: bound + 1]):
        for ey, c in enumerate(row[: bound + 1]):
            if c:
                out.coeffs[out._index((ex, ey))] = c
    return out


def shear_decompose(P: TensorPoly) -> ShearDecomposition:
    """Split a bivariate P along the change of variables (x, y) -> (x, x+y)."""
    if P.nvars != 2:
        raise DimensionMismatchError("shear decomposition needs a bivariate P")
    m = P.maxdeg
    # P(x, t - x) term by term: c x^i y^j spreads binomially over
    # x^(i+j-s) t^s, and the x-power slices of the result are the A_i
    acc = _grid(2 * m + 1, P.d)
    for (i, j), c in P.terms():
        for s in range(j + 1):
            sign = 1 if (j - s) % 2 == 0 else -1
            acc[i + j - s][s] = acc[i + j - s][s] + c * (sign * comb(j, s))
    coeffs = []
    for i in range(2 * m + 1):
        a = UniPoly(acc[i], P.d)
        if a.degree > m:
            raise InconsistentDecompositionError(
                f"A_{i} has degree {a.degree} > {m}")
        coeffs.append(a)
    return ShearDecomposition(m, tuple(coeffs), P.d)


def slice_polynomial(D: ShearDecomposition, alpha) -> UniPoly:
    """The restriction of P to the line x + y = alpha, as a polynomial in x."""
    a = as_quad(alpha, D.d)
    return UniPoly([A.eval(a) for A in D.coefficients], D.d)


def _rational_sqrt(r: Fraction) -> Optional[Fraction]:
    if r < 0:
        return None
    pn, pd = r.numerator, r.denominator
    sn, sd = isqrt(pn), isqrt(pd)
    if sn * sn == pn and sd * sd == pd:
        return Fraction(sn, sd)
    return None


def sqrt_in_field(z: QuadScalar) -> Optional[QuadScalar]:
    """An exact square root of z inside Q(sqrt d), if one exists."""
    d = z.d
    if z.surd == 0:
        a = z.rat
        s = _rational_sqrt(a)
        if s is not None:
            return QuadScalar(s, 0, d)
        s = _rational_sqrt(a / d)
        if s is not None:
            return QuadScalar(0, s, d)
        return None
    # (u + v sqrt d)^2 = z forces u^2 to solve U^2 - rat*U + d*surd^2/4 = 0
    disc = _rational_sqrt(z.rat * z.rat - z.surd * z.surd * d)
    if disc is None:
        return None
    for sign in (1, -1):
        u2 = (z.rat + sign * disc) / 2
        u = _rational_sqrt(u2)
        if u is not None and u != 0:
            v = z.surd / (2 * u)
            w = QuadScalar(u, v, d)
            if w * w == z:
                return w
    return None


def _quadratic_roots_in_field(a: QuadScalar, b: QuadScalar,
                              c: QuadScalar) -> list[QuadScalar]:
    disc = b * b - a * c * 4
    s = sqrt_in_field(disc)
    if s is None:
        return []
    two_a = a * 2
    roots = [(-b + s) / two_a]
    if s:
        roots.append((-b - s) / two_a)
    return roots


def _rational_coeff_list(p: UniPoly) -> list[Fraction]:
    out = []
    for c in p.coeffs:
        if c.surd != 0:
            raise InconsistentDecompositionError(
                "conjugate product produced an irrational coefficient")
        out.append(c.rat)
    return out


def forbidden_alphas(D: ShearDecomposition) -> list[QuadScalar]:
    """All roots of the leading coefficient A_N inside Q(sqrt d), sorted.

    Slicing at any alpha outside this finite set keeps m_alpha
    nonconstant (for N >= 1).  Roots outside the field are irrelevant:
    sampling only ever evaluates at field elements, where A_N cannot
    vanish off this list.
    """
    N = D.leading_index
    if N < 0:
        raise InconsistentDecompositionError(
            "the zero polynomial has no leading coefficient")
    A = D.coefficients[N]
    deg = A.degree
    if deg <= 0:
        return []
    if deg == 1:
        return [-A.coeffs[0] / A.coeffs[1]]
    if deg == 2:
        return sorted(_quadratic_roots_in_field(A.coeffs[2], A.coeffs[1],
                                                A.coeffs[0]))
    # Higher degree: any field root z has a rational minimal polynomial of
    # degree <= 2 dividing A * conj(A), so factoring that rational product
    # over Q and mining its linear/quadratic factors finds every candidate.
    conj = UniPoly([c.conjugate() for c in A.coeffs], D.d)
    product = _rational_coeff_list(A * conj)
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** j
               for j, c in enumerate(product))
    roots: list[QuadScalar] = []
    for factor, _mult in sympy.factor_list(expr)[1]:
        fp = sympy.Poly(factor, t)
        cs = [Fraction(str(c)) for c in reversed(fp.all_coeffs())]
        candidates: list[QuadScalar] = []
        if fp.degree() == 1:
            candidates = [QuadScalar(-cs[0] / cs[1], 0, D.d)]
        elif fp.degree() == 2:
            candidates = _quadratic_roots_in_field(
                QuadScalar(cs[2], 0, D.d), QuadScalar(cs[1], 0, D.d),
                QuadScalar(cs[0], 0, D.d))
        for z in candidates:
            if not A.eval(z) and z not in roots:
                roots.append(z)
    return sorted(roots)


def bivariate_jacobian(P: TensorPoly, D: ShearDecomposition) -> TensorPoly:
    """P_y - P_x, computed from the partials and from the decomposition.

    The two routes must agree exactly; a mismatch means the
    decomposition is broken and raises, because no caller can recover
    from that.
    """
    if P.nvars != 2:
        raise DimensionMismatchError("bivariate_jacobian needs a bivariate P")
    direct = (P.partial(2) - P.partial(1)).shrink()
    acc = _grid(3 * D.m + 1, D.d)
    for k, a in enumerate(D.coefficients):
        if k == 0:
            continue
        for j, c in enumerate(a.coeffs):
            if not c:
                continue
            # -k * c * (x+y)^j * x^(k-1), spread binomially
            for s in range(j + 1):
                acc[k - 1 + s][j - s] = acc[k - 1 + s][j - s] - c * (k * comb(j, s))
    recon = _from_grid(acc, D.d)
    if direct != recon:
        raise InconsistentDecompositionError(
            "partial-derivative and decomposition Jacobians disagree")
    return direct


def xi_determinant(P: TensorPoly, s: int) -> TensorPoly:
    """The Jacobian determinant dP/dt_{n+1} - dP/dt_s of the image map."""
    if P.nvars < 2:
        raise DimensionMismatchError("xi needs at least two variables")
    if not 1 <= s <= P.nvars - 1:
        raise DimensionMismatchError(
            f"axis {s} out of range 1..{P.nvars - 1}")
    return (P.partial(P.nvars) - P.partial(s)).shrink()


@dataclass
class StrictSearchResult:
    """Outcome of searching for a grid whose interpolant has N >= 1."""

    found: bool
    tried: int
    x0: Optional[QuadScalar] = None
    h1: Optional[QuadScalar] = None
    h2: Optional[QuadScalar] = None
    interpolant: Optional[TensorPoly] = None
    decomposition: Optional[ShearDecomposition] = None


def find_strict_decomposition(f, m: int, d: int = DEFAULT_D,
                              max_height: int = 3,
                              window=(-2, 2),
                              budget: int = 5000) -> StrictSearchResult:
    """Search (x0, h1, h2) until the fitted interpolant has leading index
    N >= 1.

    For a non-polynomial solution such a triple exists; the search walks
    candidates in ascending height (then ascending value) and stops at
    the first hit or when the budget of interpolant builds is exhausted.
    Exhaustion is an answer, not an error: the result says how many
    candidates were inspected.
    """
    tried = 0
    for hb in range(1, max_height + 1):
        level = [z for z in enumerate_by_height(hb, window, d)]
        for x0 in level:
            for h1 in level:
                if not h1:
                    continue
                for h2 in level:
                    if not h2:
                        continue
                    if max(height(x0), height(h1), height(h2)) != hb:
                        continue  # examined at an earlier level
                    if tried >= budget:
                        return StrictSearchResult(False, tried)
                    tried += 1
                    grid = GridSpec((x0,), (h1, h2), ((as_quad(1, d),),
                                                      (as_quad(1, d),)), m, d)
                    P = build_interpolant(f, grid)
                    D = shear_decompose(P)
                    if D.leading_index >= 1:
                        return StrictSearchResult(True, tried, x0, h1, h2, P, D)
    return StrictSearchResult(False, tried)
