"""Constructible solutions of the Fréchet equation to run every check on.

A witness is a small expression tree built from ordinary polynomials and
the surd-part map of individual coordinates, combined by sums, products
and scalar multiples.  Ordinary polynomials are continuous solutions;
anything containing a surd-part node is a computable *discontinuous*
solution on (Q + Q*sqrt(d))^n, the whole reason this domain was chosen.

Every model carries a structural order bound: the smallest m such that
the tree's shape guarantees the order-(m+1) equation holds.  The bound
is conservative by construction (sums take the max, products add) and
the test suite verifies both conformance and tightness empirically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatchError
from .poly import TensorPoly
from .scalars import DEFAULT_D, QuadScalar, as_quad

Point = tuple[QuadScalar, ...]


class WitnessModel:
    """Base class; concrete nodes are Ordinary, SurdPart, Sum, Product, Scale."""

    d = DEFAULT_D

    def arity(self) -> int:
        """Highest coordinate index the tree mentions (minimum point length)."""
        raise NotImplementedError

    def _eval(self, point: Point) -> QuadScalar:
        raise NotImplementedError

    def eval(self, point) -> QuadScalar:
        if isinstance(point, (tuple, list)):
            pt = tuple(as_quad(x, self.d) for x in point)
        else:
            pt = (as_quad(point, self.d),)
        if len(pt) < self.arity():
            raise DimensionMismatchError(
                f"model needs {self.arity()} coordinates, point has {len(pt)}")
        return self._eval(pt)

    def declared_order(self) -> int:
        raise NotImplementedError

    def simplify(self) -> "WitnessModel":
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def restrict(self, section: "SectionSpec") -> "WitnessModel":
        """Freeze every coordinate except the section axis; see SectionSpec."""
        raise NotImplementedError

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class SectionSpec:
    """One-variable section: keep axis s free, freeze the others.

    ``fixed`` lists the frozen values for axes 1..n with axis s skipped,
    so the ambient arity is len(fixed) + 1.
    """

    axis: int
    fixed: tuple

    def __post_init__(self):
        n = len(self.fixed) + 1
        if not 1 <= self.axis <= n:
            raise DimensionMismatchError(
                f"section axis {self.axis} out of range 1..{n}")

    @property
    def n(self) -> int:
        return len(self.fixed) + 1

    def value_at(self, axis: int) -> QuadScalar:
        """The frozen value of a non-section axis."""
        if axis == self.axis or not 1 <= axis <= self.n:
            raise DimensionMismatchError(f"axis {axis} is not frozen")
        idx = axis - 1 if axis < self.axis else axis - 2
        return as_quad(self.fixed[idx])


@dataclass(frozen=True)
class Ordinary(WitnessModel):
    """An ordinary algebraic polynomial (always a continuous solution)."""

    poly: TensorPoly

    def arity(self) -> int:
        return self.poly.nvars

    def _eval(self, point: Point) -> QuadScalar:
        return self.poly.eval(point[: self.poly.nvars])

    def declared_order(self) -> int:
        return max(0, self.poly.total_degree())

    def simplify(self) -> WitnessModel:
        return Ordinary(self.poly.shrink())

    def to_text(self) -> str:
        return f'(poly {self.poly.nvars} "{self.poly.to_text()}")'

    def restrict(self, section: SectionSpec) -> WitnessModel:
        nv = self.poly.nvars
        if section.axis > nv:
            # the polynomial does not see the free axis at all
            value = self.poly.eval([section.value_at(k) for k in range(1, nv + 1)])
            return Ordinary(TensorPoly.constant(1, value, self.poly.d))
        fixed = {k: section.value_at(k)
                 for k in range(1, nv + 1) if k != section.axis}
        if not fixed:
            return Ordinary(self.poly)
        return Ordinary(self.poly.restrict(fixed))


@dataclass(frozen=True)
class SurdPart(WitnessModel):
    """x -> surd_part(x_axis): Q-linear, discontinuous, order 1."""

    axis: int = 1

    def __post_init__(self):
        if self.axis < 1:
            raise DimensionMismatchError(f"axis must be >= 1, got {self.axis}")

    def arity(self) -> int:
        return self.axis

    def _eval(self, point: Point) -> QuadScalar:
        z = point[self.axis - 1]
        return QuadScalar(z.surd, 0, z.d)

    def declared_order(self) -> int:
        return 1

    def simplify(self) -> WitnessModel:
        return self

    def to_text(self) -> str:
        return f"(surd {self.axis})"

    def restrict(self, section: SectionSpec) -> WitnessModel:
        if self.axis == section.axis:
            return SurdPart(1)
        frozen = as_quad(section.value_at(self.axis))
        return Ordinary(TensorPoly.constant(1, QuadScalar(frozen.surd, 0, frozen.d),
                                            frozen.d))


@dataclass(frozen=True)
class Sum(WitnessModel):
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def arity(self) -> int:
        return max((c.arity() for c in self.children), default=1)

    def _eval(self, point: Point) -> QuadScalar:
        acc = as_quad(0, self.d)
        for c in self.children:
            acc = acc + c._eval(point)
        return acc

    def declared_order(self) -> int:
        return max((c.declared_order() for c in self.children), default=0)

    def simplify(self) -> WitnessModel:
        return _simplify_sum([c.simplify() for c in self.children])

    def to_text(self) -> str:
        return "(sum " + " ".join(c.to_text() for c in self.children) + ")"

    def restrict(self, section: SectionSpec) -> WitnessModel:
        return Sum(tuple(c.restrict(section) for c in self.children))


@dataclass(frozen=True)
class Product(WitnessModel):
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def arity(self) -> int:
        return max((c.arity() for c in self.children), default=1)

    def _eval(self, point: Point) -> QuadScalar:
        acc = as_quad(1, self.d)
        for c in self.children:
            acc = acc * c._eval(point)
        return acc

    def declared_order(self) -> int:
        return sum(c.declared_order() for c in self.children)

    def simplify(self) -> WitnessModel:
        return _simplify_product([c.simplify() for c in self.children])

    def to_text(self) -> str:
        return "(prod " + " ".join(c.to_text() for c in self.children) + ")"

    def restrict(self, section: SectionSpec) -> WitnessModel:
        return Product(tuple(c.restrict(section) for c in self.children))


@dataclass(frozen=True)
class Scale(WitnessModel):
    factor: QuadScalar
    child: WitnessModel

    def __post_init__(self):
        object.__setattr__(self, "factor", as_quad(self.factor))

    def arity(self) -> int:
        return self.child.arity()

    def _eval(self, point: Point) -> QuadScalar:
        return self.factor * self.child._eval(point)

    def declared_order(self) -> int:
        return self.child.declared_order()

    def simplify(self) -> WitnessModel:
        child = self.child.simplify()
        if not self.factor:
            return _zero_model()
        if isinstance(child, Ordinary):
            return Ordinary(child.poly.scale(self.factor))
        if isinstance(child, Scale):
            return Scale(self.factor * child.factor, child.child).simplify()
        if self.factor == 1:
            return child
        return Scale(self.factor, child)

    def to_text(self) -> str:
        return f'(scale "{self.factor}" {self.child.to_text()})'

    def restrict(self, section: SectionSpec) -> WitnessModel:
        return Scale(self.factor, self.child.restrict(section))


def _zero_model(d: int = DEFAULT_D) -> Ordinary:
    return Ordinary(TensorPoly.zero(1, 0, d))


def _simplify_sum(children: list[WitnessModel]) -> WitnessModel:
    flat: list[WitnessModel] = []
    for c in children:
        if isinstance(c, Sum):
            flat.extend(c.children)
        else:
            flat.append(c)
    poly_acc: TensorPoly | None = None
    groups: dict[str, tuple[QuadScalar, WitnessModel]] = {}
    for c in flat:
        if isinstance(c, Ordinary):
            p = c.poly
            if poly_acc is None:
                poly_acc = p
            else:
                nv = max(poly_acc.nvars, p.nvars)
                poly_acc = poly_acc.lift(nv) + p.lift(nv)
            continue
        if isinstance(c, Scale):
            coeff, core = c.factor, c.child
        else:
            coeff, core = as_quad(1), c
        key = core.to_text()
        if key in groups:
            prev, _ = groups[key]
            groups[key] = (prev + coeff, core)
        else:
            groups[key] = (coeff, core)
    parts: list[WitnessModel] = []
    if poly_acc is not None and not poly_acc.is_zero():
        parts.append(Ordinary(poly_acc.shrink()))
    for key in sorted(groups):
        coeff, core = groups[key]
        if not coeff:
            continue
        parts.append(core if coeff == 1 else Scale(coeff, core))
    if not parts:
        return _zero_model()
    if len(parts) == 1:
        return parts[0]
    return Sum(tuple(parts))


def _simplify_product(children: list[WitnessModel]) -> WitnessModel:
    flat: list[WitnessModel] = []
    for c in children:
        if isinstance(c, Product):
            flat.extend(c.children)
        else:
            flat.append(c)
    factor = as_quad(1)
    poly_acc: TensorPoly | None = None
    rest: list[WitnessModel] = []
    for c in flat:
        if isinstance(c, Scale):
            factor = factor * c.factor
            c = c.child
        if isinstance(c, Ordinary):
            if c.poly.is_zero():
                return _zero_model()
            poly_acc = c.poly if poly_acc is None else _poly_mul(poly_acc, c.poly)
        else:
            rest.append(c)
    if not factor:
        return _zero_model()
    if poly_acc is not None:
        rest.insert(0, Ordinary(poly_acc.shrink()))
    if not rest:
        return Ordinary(TensorPoly.constant(1, factor))
    core = rest[0] if len(rest) == 1 else Product(tuple(rest))
    if factor == 1:
        return core
    return Scale(factor, core).simplify()


def _poly_mul(a: TensorPoly, b: TensorPoly) -> TensorPoly:
    nv = max(a.nvars, b.nvars)
    return a.lift(nv) * b.lift(nv)


def eval_model(f: WitnessModel, point) -> QuadScalar:
    return f.eval(point)


def declared_order(f: WitnessModel) -> int:
    return f.declared_order()


def restrict_section(f: WitnessModel, section: SectionSpec) -> WitnessModel:
    """The univariate model obtained by freezing all coordinates but one.

    Evaluation commutes with restriction by construction.
    """
    if section.n < f.arity():
        raise DimensionMismatchError(
            f"section ambient arity {section.n} < model arity {f.arity()}")
    return f.restrict(section)


def is_structurally_polynomial(f: WitnessModel) -> bool:
    """True iff no surd-part node survives syntactic simplification."""

    def has_surd(m: WitnessModel) -> bool:
        if isinstance(m, SurdPart):
            return True
        if isinstance(m, (Sum, Product)):
            return any(has_surd(c) for c in m.children)
        if isinstance(m, Scale):
            return has_surd(m.child)
        return False

    return not has_surd(f.simplify())
