"""Parsers for the three text formats the CLI speaks.

* scalar literals:      ``3``, ``-5/7``, ``sqrt(2)``, ``3/2+5/7*sqrt(2)``
* polynomial text:      ``x*y``, ``t1^2*t2 - 1/2``, ``(1+sqrt(2))*t1``
* model s-expressions:  ``(sum (pow (surd 1) 2) (poly 1 "t1^2"))``

The polynomial grammar is the usual +, -, *, ^ with parentheses; variables
are t1..tn, with x, y, z and u, v, w accepted as aliases for t1, t2, t3.
Everything the canonical printers emit parses back to an equal object.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ModelParseError
from .poly import TensorPoly
from .scalars import DEFAULT_D, QuadScalar, as_quad
from .witness import Ordinary, Product, Scale, Sum, SurdPart, WitnessModel

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z]\w*|\^|\+|-|\*|/|\(|\))")

_VAR_ALIAS = {"x": 1, "y": 2, "z": 3, "u": 1, "v": 2, "w": 3}


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[str] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ModelParseError(
                        f"cannot tokenize {text[pos:]!r} in {text!r}")
                break
            self.items.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.items[self.i] if self.i < len(self.items) else None

    def pop(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ModelParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.pop()
        if got != tok:
            raise ModelParseError(
                f"expected {tok!r}, got {got!r} in {self.text!r}")


class _PolyParser:
    """Recursive descent for polynomial / scalar expressions."""

    def __init__(self, text: str, nvars: int | None, d: int):
        self.toks = _Tokens(text)
        self.nvars = nvars
        self.d = d
        self.seen_vars = 0

    def _var_index(self, name: str) -> int:
        if name in _VAR_ALIAS:
            return _VAR_ALIAS[name]
        m = re.fullmatch(r"[tx](\d+)", name)
        if m:
            k = int(m.group(1))
            if k >= 1:
                return k
        raise ModelParseError(f"unknown variable {name!r}")

    def parse(self) -> TensorPoly:
        # parse against a generous arity, then cut back to what was used
        self.work_nvars = self.nvars if self.nvars is not None else 8
        p = self._expr()
        if self.toks.peek() is not None:
            raise ModelParseError(
                f"trailing input {self.toks.peek()!r} in {self.toks.text!r}")
        if self.nvars is None:
            p = _drop_unused_trailing(p, max(1, self.seen_vars))
        return p.shrink()

    def _expr(self) -> TensorPoly:
        sign = 1
        while self.toks.peek() in ("+", "-"):
            if self.toks.pop() == "-":
                sign = -sign
        p = self._term()
        if sign < 0:
            p = -p
        while self.toks.peek() in ("+", "-"):
            op = self.toks.pop()
            q = self._term()
            p = p + q if op == "+" else p - q
        return p

    def _term(self) -> TensorPoly:
        p = self._factor()
        while True:
            tok = self.toks.peek()
            if tok == "*":
                self.toks.pop()
                p = p * self._factor()
            elif tok == "/":
                self.toks.pop()
                q = self._factor()
                if q.total_degree() > 0:
                    raise ModelParseError("division by a non-constant")
                p = p.scale(q.coeffs[0].inverse())
            else:
                return p

    def _factor(self) -> TensorPoly:
        if self.toks.peek() == "-":
            self.toks.pop()
            return -self._factor()
        p = self._base()
        if self.toks.peek() == "^":
            self.toks.pop()
            e = self.toks.pop()
            if not e.isdigit():
                raise ModelParseError(f"exponent must be a nonnegative int, got {e!r}")
            return p ** int(e)
        return p

    def _base(self) -> TensorPoly:
        tok = self.toks.pop()
        if tok == "(":
            p = self._expr()
            self.toks.expect(")")
            return p
        if tok.isdigit():
            return TensorPoly.constant(self.work_nvars, Fraction(int(tok)), self.d)
        if tok == "sqrt":
            self.toks.expect("(")
            arg = self.toks.pop()
            self.toks.expect(")")
            if not arg.isdigit() or int(arg) != self.d:
                raise ModelParseError(
                    f"sqrt({arg}) is outside the working field Q(sqrt {self.d})")
            return TensorPoly.constant(self.work_nvars,
                                       QuadScalar(0, 1, self.d), self.d)
        k = self._var_index(tok)
        if self.nvars is not None and k > self.nvars:
            raise ModelParseError(
                f"variable t{k} exceeds declared arity {self.nvars}")
        if k > self.work_nvars:
            raise ModelParseError(f"variable t{k} exceeds supported arity")
        self.seen_vars = max(self.seen_vars, k)
        return TensorPoly.variable(self.work_nvars, k, self.d)


def _drop_unused_trailing(p: TensorPoly, target: int) -> TensorPoly:
    """Reindex p onto its first ``target`` variables (the rest never occur)."""
    if p.nvars <= target:
        return p
    out = TensorPoly.zero(target, p.maxdeg, p.d)
    for e, c in p.terms():
        if any(e[target:]):
            raise ModelParseError("internal: trailing variable leaked")
        out.coeffs[out._index(e[:target])] = c
    return out


def parse_poly(text: str, nvars: int | None = None, d: int = DEFAULT_D) -> TensorPoly:
    """Parse polynomial text into a TensorPoly (arity inferred if not given)."""
    return _PolyParser(text, nvars, d).parse()


def parse_scalar(text: str, d: int = DEFAULT_D) -> QuadScalar:
    """Parse an exact scalar literal of Q(sqrt d)."""
    parser = _PolyParser(text, None, d)
    p = parser.parse()
    if parser.seen_vars:
        raise ModelParseError(f"scalar literal {text!r} contains a variable")
    return p.coeffs[0]


# -- model s-expressions ----------------------------------------------------

_SEXP_TOKEN = re.compile(r'\s*(\(|\)|"[^"]*"|[^\s()"]+)')


def _sexp_tokens(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _SEXP_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ModelParseError(f"cannot tokenize model text {text!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


def _sexp_read(tokens: list[str], i: int):
    if i >= len(tokens):
        raise ModelParseError("unexpected end of model text")
    tok = tokens[i]
    if tok == "(":
        items = []
        i += 1
        while i < len(tokens) and tokens[i] != ")":
            node, i = _sexp_read(tokens, i)
            items.append(node)
        if i >= len(tokens):
            raise ModelParseError("unbalanced '(' in model text")
        return items, i + 1
    if tok == ")":
        raise ModelParseError("unbalanced ')' in model text")
    return tok, i + 1


def _build_model(node, d: int) -> WitnessModel:
    if not isinstance(node, list) or not node:
        raise ModelParseError(f"expected a (...) form, got {node!r}")
    head = node[0]
    args = node[1:]
    if head == "surd":
        if len(args) != 1 or not isinstance(args[0], str) or not args[0].isdigit():
            raise ModelParseError("(surd J) needs one positive integer axis")
        return SurdPart(int(args[0]))
    if head == "poly":
        if (len(args) != 2 or not isinstance(args[0], str) or not args[0].isdigit()
                or not isinstance(args[1], str) or not args[1].startswith('"')):
            raise ModelParseError('(poly N "text") needs an arity and a quoted body')
        nvars = int(args[0])
        return Ordinary(parse_poly(args[1][1:-1], nvars, d))
    if head == "sum":
        if not args:
            raise ModelParseError("(sum ...) needs at least one child")
        return Sum(tuple(_build_model(a, d) for a in args))
    if head == "prod":
        if not args:
            raise ModelParseError("(prod ...) needs at least one child")
        return Product(tuple(_build_model(a, d) for a in args))
    if head == "scale":
        if len(args) != 2 or not isinstance(args[0], str):
            raise ModelParseError("(scale C child) needs a scalar and a child")
        literal = args[0][1:-1] if args[0].startswith('"') else args[0]
        return Scale(parse_scalar(literal, d), _build_model(args[1], d))
    if head == "pow":
        if len(args) != 2 or not isinstance(args[1], str) or not args[1].isdigit():
            raise ModelParseError("(pow child K) needs a child and an exponent")
        k = int(args[1])
        child = _build_model(args[0], d)
        if k == 0:
            return Ordinary(TensorPoly.constant(1, 1, d))
        return child if k == 1 else Product((child,) * k)
    raise ModelParseError(f"unknown model form {head!r}")


def parse_model(text: str, d: int = DEFAULT_D) -> WitnessModel:
    """Parse a model s-expression; inverse of WitnessModel.to_text()."""
    tokens = _sexp_tokens(text)
    if not tokens:
        raise ModelParseError("empty model text")
    node, i = _sexp_read(tokens, 0)
    if i != len(tokens):
        raise ModelParseError(f"trailing input after model in {text!r}")
    return _build_model(node, d)
