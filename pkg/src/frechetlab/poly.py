"""Dense polynomials with a per-variable degree bound, over Q(sqrt(d)).

``TensorPoly`` models the space of n-variate polynomials of degree <= m
in each variable separately: a dense coefficient tensor of shape
(m+1)**n stored flat in row-major order with the first variable as the
major axis.  Dense storage costs (m+1)**n entries, which is the right
trade at desk scale (m <= ~6, n <= 3); nothing here is sparse-friendly
and nothing needs to be.

Variables are positional, named t1..tn in the canonical text form, and
every public index is 1-based to match that naming.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatchError
from .scalars import DEFAULT_D, QuadScalar, as_quad


def _coeff_text(c: QuadScalar) -> str:
    s = str(c)
    if c.rat != 0 and c.surd != 0:
        return f"({s})"
    return s


def _term_text(c: QuadScalar, names_and_exps: list[tuple[str, int]]) -> str:
    mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in names_and_exps if e > 0)
    if not mono:
        return _coeff_text(c)
    if c.rat == 1 and c.surd == 0:
        return mono
    if c.rat == -1 and c.surd == 0:
        return f"-{mono}"
    return f"{_coeff_text(c)}*{mono}"


def _join_terms(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += f" - {t[1:]}"
        else:
            out += f" + {t}"
    return out


class TensorPoly:
    """Member of the n-variate, per-variable-degree-<=m polynomial space."""

    __slots__ = ("nvars", "maxdeg", "coeffs", "d")

    def __init__(self, nvars: int, maxdeg: int, coeffs: Sequence, d: int = DEFAULT_D):
        if nvars < 1:
            raise DimensionMismatchError(f"nvars must be >= 1, got {nvars}")
        if maxdeg < 0:
            raise DimensionMismatchError(f"maxdeg must be >= 0, got {maxdeg}")
        size = (maxdeg + 1) ** nvars
        if len(coeffs) != size:
            raise DimensionMismatchError(
                f"need {size} coefficients for nvars={nvars}, maxdeg={maxdeg}; "
                f"got {len(coeffs)}")
        self.nvars = nvars
        self.maxdeg = maxdeg
        self.d = d
        self.coeffs = [as_quad(c, d) for c in coeffs]

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, maxdeg: int = 0, d: int = DEFAULT_D) -> "TensorPoly":
        return cls(nvars, maxdeg, [0] * (maxdeg + 1) ** nvars, d)

    @classmethod
    def constant(cls, nvars: int, value, d: int = DEFAULT_D) -> "TensorPoly":
        p = cls.zero(nvars, 0, d)
        p.coeffs[0] = as_quad(value, d)
        return p

    @classmethod
    def variable(cls, nvars: int, k: int, d: int = DEFAULT_D) -> "TensorPoly":
        """The polynomial t_k (1-based k)."""
        p = cls.zero(nvars, 1, d)
        e = [0] * nvars
        e[k - 1] = 1
        p.coeffs[p._index(e)] = as_quad(1, d)
        return p

    @classmethod
    def from_terms(cls, nvars: int, terms: dict, d: int = DEFAULT_D) -> "TensorPoly":
        """Build from {exponent tuple: coefficient}."""
        m = max((max(e) for e in terms if any(e)), default=0)
        p = cls.zero(nvars, m, d)
        for e, c in terms.items():
            if len(e) != nvars:
                raise DimensionMismatchError(f"exponent {e} has wrong arity")
            p.coeffs[p._index(e)] = p.coeffs[p._index(e)] + as_quad(c, d)
        return p

    # -- indexing -----------------------------------------------------------

    def _index(self, exps: Sequence[int]) -> int:
        idx = 0
        for e in exps:
            idx = idx * (self.maxdeg + 1) + e
        return idx

    def exponents(self) -> Iterator[tuple[int, ...]]:
        """All exponent tuples in lexicographic (row-major) order."""
        def rec(prefix, k):
            if k == self.nvars:
                yield tuple(prefix)
                return
            for e in range(self.maxdeg + 1):
                yield from rec(prefix + [e], k + 1)
        yield from rec([], 0)

    def coeff(self, exps: Sequence[int]) -> QuadScalar:
        if len(exps) != self.nvars:
            raise DimensionMismatchError(f"exponent {exps} has wrong arity")
        if any(e < 0 for e in exps):
            raise DimensionMismatchError(f"negative exponent in {exps}")
        if any(e > self.maxdeg for e in exps):
            return as_quad(0, self.d)
        return self.coeffs[self._index(exps)]

    def terms(self) -> Iterator[tuple[tuple[int, ...], QuadScalar]]:
        """Nonzero (exponents, coefficient) pairs in lexicographic order."""
        for e in self.exponents():
            c = self.coeffs[self._index(e)]
            if c:
                yield e, c

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def degree_in(self, k: int) -> int:
        """Exact degree in variable t_k, or -1 for the zero polynomial."""
        best = -1
        for e, _ in self.terms():
            if e[k - 1] > best:
                best = e[k - 1]
        return best

    def total_degree(self) -> int:
        """Max over monomials of the sum of exponents; -1 for zero."""
        return max((sum(e) for e, _ in self.terms()), default=-1)

    # -- arithmetic -----------------------------------------------------------

    def _aligned(self, other: "TensorPoly", maxdeg: int) -> tuple[list, list]:
        return (self.widen(maxdeg).coeffs, other.widen(maxdeg).coeffs)

    def widen(self, maxdeg: int) -> "TensorPoly":
        """Same polynomial viewed with a larger (or equal) degree bound."""
        if maxdeg == self.maxdeg:
            return self
        if maxdeg < self.maxdeg:
            raise DimensionMismatchError("widen cannot lower the bound; use shrink")
        out = TensorPoly.zero(self.nvars, maxdeg, self.d)
        for e, c in self.terms():
            out.coeffs[out._index(e)] = c
        return out

    def shrink(self) -> "TensorPoly":
        """Canonical minimal degree bound holding every nonzero term."""
        m = 0
        for e, _ in self.terms():
            m = max(m, max(e))
        if m == self.maxdeg:
            return self
        out = TensorPoly.zero(self.nvars, m, self.d)
        for e, c in self.terms():
            out.coeffs[out._index(e)] = c
        return out

    def _binop_check(self, other: "TensorPoly"):
        if not isinstance(other, TensorPoly):
            raise TypeError(f"expected TensorPoly, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise DimensionMismatchError(
                f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        self._binop_check(other)
        m = max(self.maxdeg, other.maxdeg)
        a, b = self._aligned(other, m)
        return TensorPoly(self.nvars, m, [x + y for x, y in zip(a, b)], self.d)

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        self._binop_check(other)
        m = max(self.maxdeg, other.maxdeg)
        a, b = self._aligned(other, m)
        return TensorPoly(self.nvars, m, [x - y for x, y in zip(a, b)], self.d)

    def __neg__(self) -> "TensorPoly":
        return TensorPoly(self.nvars, self.maxdeg, [-c for c in self.coeffs], self.d)

    def scale(self, factor) -> "TensorPoly":
        f = as_quad(factor, self.d)
        return TensorPoly(self.nvars, self.maxdeg, [f * c for c in self.coeffs], self.d)

    def __mul__(self, other: "TensorPoly") -> "TensorPoly":
        self._binop_check(other)
        out = TensorPoly.zero(self.nvars, self.maxdeg + other.maxdeg, self.d)
        for ea, ca in self.terms():
            for eb, cb in other.terms():
                e = tuple(x + y for x, y in zip(ea, eb))
                i = out._index(e)
                out.coeffs[i] = out.coeffs[i] + ca * cb
        return out

    def __pow__(self, k: int) -> "TensorPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = TensorPoly.constant(self.nvars, 1, self.d)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        m = max(self.maxdeg, other.maxdeg)
        a, b = self._aligned(other, m)
        return a == b

    def __hash__(self):
        s = self.shrink()
        return hash((s.nvars, s.maxdeg, tuple((c.rat, c.surd) for c in s.coeffs)))

    # -- evaluation and substitution ------------------------------------------

    def eval(self, point: Sequence) -> QuadScalar:
        """Exact value at a point, by nested Horner evaluation."""
        if len(point) != self.nvars:
            raise DimensionMismatchError(
                f"point of length {len(point)} for {self.nvars} variables")
        pt = [as_quad(x, self.d) for x in point]
        m1 = self.maxdeg + 1

        def rec(offset: int, axis: int) -> QuadScalar:
            if axis == self.nvars:
                return self.coeffs[offset]
            stride = m1 ** (self.nvars - axis - 1)
            acc = rec(offset + self.maxdeg * stride, axis + 1)
            x = pt[axis]
            for e in range(self.maxdeg - 1, -1, -1):
                acc = acc * x + rec(offset + e * stride, axis + 1)
            return acc

        return rec(0, 0)

    def partial(self, k: int) -> "TensorPoly":
        """Formal partial derivative with respect to t_k (1-based)."""
        if not 1 <= k <= self.nvars:
            raise DimensionMismatchError(
                f"variable index {k} out of range 1..{self.nvars}")
        out = TensorPoly.zero(self.nvars, self.maxdeg, self.d)
        for e, c in self.terms():
            j = e[k - 1]
            if j == 0:
                continue
            e2 = list(e)
            e2[k - 1] = j - 1
            i = out._index(e2)
            out.coeffs[i] = out.coeffs[i] + c * j
        return out

    def substitute_affine(self, k: int, const, linear: Sequence) -> "TensorPoly":
        """Replace t_k by the affine form const + sum_j linear[j]*t_j, exactly.

        The replacement may mention every current variable, including
        t_k itself.  The result is expanded, collected and shrunk to its
        minimal bound (per-variable degrees can reach 2*maxdeg before
        shrinking).
        """
        if not 1 <= k <= self.nvars:
            raise DimensionMismatchError(
                f"variable index {k} out of range 1..{self.nvars}")
        if len(linear) != self.nvars:
            raise DimensionMismatchError(
                f"affine form needs {self.nvars} linear coefficients")
        form = TensorPoly.constant(self.nvars, as_quad(const, self.d), self.d)
        for j, cj in enumerate(linear):
            cj = as_quad(cj, self.d)
            if cj:
                form = form + TensorPoly.variable(self.nvars, j + 1, self.d).scale(cj)
        # slice_j collects the coefficient of t_k^j (with t_k removed)
        out = TensorPoly.zero(self.nvars, 0, self.d)
        power = TensorPoly.constant(self.nvars, 1, self.d)
        for j in range(self.maxdeg + 1):
            slice_j = TensorPoly.zero(self.nvars, self.maxdeg, self.d)
            for e, c in self.terms():
                if e[k - 1] == j:
                    e2 = list(e)
                    e2[k - 1] = 0
                    slice_j.coeffs[slice_j._index(e2)] = c
            if not slice_j.is_zero():
                out = out + slice_j * power
            if j < self.maxdeg:
                power = power * form
        return out.shrink()

    def lift(self, nvars: int) -> "TensorPoly":
        """View this polynomial in a larger variable set (new trailing
        variables do not occur)."""
        if nvars == self.nvars:
            return self
        if nvars < self.nvars:
            raise DimensionMismatchError("lift cannot drop variables")
        out = TensorPoly.zero(nvars, self.maxdeg, self.d)
        for e, c in self.terms():
            out.coeffs[out._index(e + (0,) * (nvars - self.nvars))] = c
        return out

    def restrict(self, fixed: dict) -> "TensorPoly":
        """Freeze the variables in ``fixed`` (1-based index -> value).

        The surviving variables keep their relative order and are
        renumbered t1.. in the result.
        """
        for k in fixed:
            if not 1 <= k <= self.nvars:
                raise DimensionMismatchError(
                    f"variable index {k} out of range 1..{self.nvars}")
        keep = [k for k in range(1, self.nvars + 1) if k not in fixed]
        if not keep:
            raise DimensionMismatchError("cannot freeze every variable")
        values = {k: as_quad(v, self.d) for k, v in fixed.items()}
        out = TensorPoly.zero(len(keep), self.maxdeg, self.d)
        pos = {k: i for i, k in enumerate(keep)}
        for e, c in self.terms():
            for k, v in values.items():
                c = c * v ** e[k - 1]
            e2 = [0] * len(keep)
            for k in keep:
                e2[pos[k]] = e[k - 1]
            i = out._index(e2)
            out.coeffs[i] = out.coeffs[i] + c
        return out.shrink()

    # -- rendering -------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical serialization: monomials in ascending lexicographic
        exponent order, coefficients exact."""
        names = [f"t{i+1}" for i in range(self.nvars)]
        terms = [_term_text(c, list(zip(names, e))) for e, c in self.terms()]
        return _join_terms(terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"TensorPoly({self.nvars}, {self.maxdeg}, <{self.to_text()}>)"


def poly_equal(p: TensorPoly, q: TensorPoly) -> bool:
    """Exact equality after aligning degree bounds; no tolerance, ever."""
    if p.nvars != q.nvars:
        raise DimensionMismatchError(f"arity mismatch: {p.nvars} vs {q.nvars}")
    return p == q


def tensor_eval(p: TensorPoly, point: Sequence) -> QuadScalar:
    return p.eval(point)


def partial_derivative(p: TensorPoly, k: int) -> TensorPoly:
    return p.partial(k)


def substitute_affine(p: TensorPoly, k: int, const, linear: Sequence) -> TensorPoly:
    return p.substitute_affine(k, const, linear)


class UniPoly:
    """A univariate polynomial with trailing-nonzero canonical coefficients.

    The zero polynomial has an empty coefficient list and degree -1.
    """

    __slots__ = ("coeffs", "d")

    def __init__(self, coeffs: Iterable = (), d: int = DEFAULT_D):
        cs = [as_quad(c, d) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs
        self.d = d

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def eval(self, x) -> QuadScalar:
        x = as_quad(x, self.d)
        acc = as_quad(0, self.d)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def coeff(self, j: int) -> QuadScalar:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return as_quad(0, self.d)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.d)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) - other.coeff(i) for i in range(n)], self.d)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.d)

    def scale(self, factor) -> "UniPoly":
        f = as_quad(factor, self.d)
        return UniPoly([f * c for c in self.coeffs], self.d)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly((), self.d)
        out = [as_quad(0, self.d)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple((c.rat, c.surd) for c in self.coeffs))

    def to_tensor(self) -> TensorPoly:
        if self.is_zero():
            return TensorPoly.zero(1, 0, self.d)
        return TensorPoly(1, self.degree, self.coeffs, self.d)

    @classmethod
    def from_tensor(cls, p: TensorPoly) -> "UniPoly":
        if p.nvars != 1:
            raise DimensionMismatchError("from_tensor needs a univariate poly")
        return cls(p.coeffs, p.d)

    def to_text(self, var: str = "t") -> str:
        terms = [_term_text(c, [(var, j)]) for j, c in enumerate(self.coeffs) if c]
        return _join_terms(terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"UniPoly(<{self.to_text()}>)"
