"""Expression trees for the functions being integrated.

Grammar (one variable, x):

    expr   :=  term  (("+" | "-") term)*
    term   :=  unary (("*" | "/") unary)*
    unary  :=  "-" unary | power
    power  :=  atom ("^" unary)?          exponent must fold to a constant
    atom   :=  NUMBER | "x" | NAME "(" expr ")" | "(" expr ")"

Known function names: exp, ln, abs, sign.  Powers are right associative
and bind tighter than unary minus, so -x^2 is -(x^2).  Printing an
expression yields a canonical string that re-parses to the same tree.

Evaluation is polymorphic: Fraction inputs stay exact through the
rational operations (+, -, *, /, integer powers, abs) and fall to float
only at exp/ln or non-integer powers.

The symbolic derivative of abs(u) uses sign(u)*u' with sign(0) = 0; no
builtin ever differentiates abs at its kink on the stated domains.
"""

from __future__ import annotations

import dataclasses
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, ParseError


class Expr:
    """Base class for expression nodes. Nodes are immutable."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(Expr):
    value: object  # int, float, or Fraction


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: object  # numeric constant, not a subtree


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Call(Expr):
    func: str  # "exp" | "ln" | "abs" | "sign"
    arg: Expr


_FUNCS = ("exp", "ln", "abs", "sign")

X = Var()


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(
    r"(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []  # (kind, value, offset)
        pos = 0
        n = len(text)
        while pos < n:
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            if m.lastgroup == "num":
                tok = m.group()
                value = int(tok) if re.fullmatch(r"\d+", tok) else float(tok)
                self.tokens.append(("num", value, pos))
            elif m.lastgroup == "name":
                self.tokens.append(("name", m.group(), pos))
            else:
                self.tokens.append(("op", m.group(), pos))
            pos = m.end()
        self.i = 0

    def _peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("end", None, len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _expect_op(self, op: str):
        kind, value, offset = self._next()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", offset)

    def parse(self) -> Expr:
        e = self.expr()
        kind, value, offset = self._peek()
        if kind != "end":
            raise ParseError(f"trailing input {value!r}", offset)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value in "+-":
                self._next()
                rhs = self.term()
                e = Add(e, rhs) if value == "+" else Sub(e, rhs)
            else:
                return e

    def term(self) -> Expr:
        e = self.unary()
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value in "*/":
                self._next()
                rhs = self.unary()
                e = Mul(e, rhs) if value == "*" else Div(e, rhs)
            else:
                return e

    def unary(self) -> Expr:
        kind, value, _ = self._peek()
        if kind == "op" and value == "-":
            self._next()
            operand = self.unary()
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Neg(operand)
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, value, offset = self._peek()
        if kind == "op" and value == "^":
            self._next()
            exp_offset = self._peek()[2]
            exponent = self.unary()
            try:
                n = _const_value(exponent)
            except ValueError:
                raise ParseError("exponent must be a constant", exp_offset) from None
            return Pow(base, n)
        return base

    def atom(self) -> Expr:
        kind, value, offset = self._next()
        if kind == "num":
            return Const(value)
        if kind == "name":
            if value == "x":
                return X
            if value in _FUNCS:
                self._expect_op("(")
                arg = self.expr()
                self._expect_op(")")
                return Call(value, arg)
            raise ParseError(f"unknown identifier {value!r}", offset)
        if kind == "op" and value == "(":
            e = self.expr()
            self._expect_op(")")
            return e
        raise ParseError(f"expected a value, got {value!r}", offset)


def _const_value(e: Expr):
    """Fold a variable-free tree to a number; ValueError if it has x."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Neg):
        return -_const_value(e.operand)
    if isinstance(e, Add):
        return _const_value(e.left) + _const_value(e.right)
    if isinstance(e, Sub):
        return _const_value(e.left) - _const_value(e.right)
    if isinstance(e, Mul):
        return _const_value(e.left) * _const_value(e.right)
    if isinstance(e, Div):
        return _const_value(e.left) / _const_value(e.right)
    if isinstance(e, Pow):
        return _const_value(e.base) ** e.exponent
    raise ValueError("not a constant expression")


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printing

_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_UNARY
    if isinstance(e, Const) and e.value < 0:
        return _PREC_UNARY  # prints with a leading minus
    if isinstance(e, Pow):
        return _PREC_POW
    return _PREC_ATOM


def _num_str(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _wrap(e: Expr, minimum: int) -> str:
    s = to_string(e)
    return f"({s})" if _prec(e) < minimum else s


def to_string(e: Expr) -> str:
    """Canonical rendering; parse(to_string(e)) reproduces e."""
    if isinstance(e, Const):
        return _num_str(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Add):
        return f"{_wrap(e.left, _PREC_ADD)} + {_wrap(e.right, _PREC_MUL)}"
    if isinstance(e, Sub):
        return f"{_wrap(e.left, _PREC_ADD)} - {_wrap(e.right, _PREC_MUL)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.left, _PREC_MUL)} * {_wrap(e.right, _PREC_UNARY)}"
    if isinstance(e, Div):
        return f"{_wrap(e.left, _PREC_MUL)} / {_wrap(e.right, _PREC_UNARY)}"
    if isinstance(e, Neg):
        return f"-{_wrap(e.operand, _PREC_UNARY)}"
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _PREC_ATOM)}^{_num_str(e.exponent)}"
    if isinstance(e, Call):
        return f"{e.func}({to_string(e.arg)})"
    raise TypeError(f"not an Expr: {e!r}")


# ---------------------------------------------------------------------------
# Evaluation

def _is_integral(n) -> bool:
    if isinstance(n, int):
        return True
    if isinstance(n, Fraction):
        return n.denominator == 1
    return isinstance(n, float) and n.is_integer()


def evaluate(e: Expr, x):
    """Evaluate at x with domain checks; Fractions stay exact where possible."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Add):
        return evaluate(e.left, x) + evaluate(e.right, x)
    if isinstance(e, Sub):
        return evaluate(e.left, x) - evaluate(e.right, x)
    if isinstance(e, Mul):
        return evaluate(e.left, x) * evaluate(e.right, x)
    if isinstance(e, Div):
        num = evaluate(e.left, x)
        den = evaluate(e.right, x)
        if den == 0:
            raise DomainError("division by zero")
        return num / den
    if isinstance(e, Neg):
        return -evaluate(e.operand, x)
    if isinstance(e, Pow):
        base = evaluate(e.base, x)
        n = e.exponent
        if _is_integral(n):
            k = int(n)
            if base == 0 and k < 0:
                raise DomainError("zero base with negative exponent")
            return base ** k
        if base < 0:
            raise DomainError(f"negative base {base!r} with non-integer exponent")
        if base == 0 and n < 0:
            raise DomainError("zero base with negative exponent")
        return float(base) ** float(n)
    if isinstance(e, Call):
        v = evaluate(e.arg, x)
        if e.func == "exp":
            return math.exp(v)
        if e.func == "ln":
            if v <= 0:
                raise DomainError(f"ln of non-positive value {v!r}")
            return math.log(v)
        if e.func == "abs":
            return abs(v)
        if e.func == "sign":
            return (v > 0) - (v < 0)
    raise TypeError(f"not an Expr: {e!r}")


# ---------------------------------------------------------------------------
# Differentiation

def differentiate(e: Expr) -> Expr:
    """Exact symbolic derivative, lightly simplified."""
    return simplify(_diff(e))


def _diff(e: Expr) -> Expr:
    if isinstance(e, Const):
        return Const(0)
    if isinstance(e, Var):
        return Const(1)
    if isinstance(e, Add):
        return Add(_diff(e.left), _diff(e.right))
    if isinstance(e, Sub):
        return Sub(_diff(e.left), _diff(e.right))
    if isinstance(e, Mul):
        return Add(Mul(_diff(e.left), e.right), Mul(e.left, _diff(e.right)))
    if isinstance(e, Div):
        num = Sub(Mul(_diff(e.left), e.right), Mul(e.left, _diff(e.right)))
        return Div(num, Pow(e.right, 2))
    if isinstance(e, Neg):
        return Neg(_diff(e.operand))
    if isinstance(e, Pow):
        n = e.exponent
        return Mul(Mul(Const(n), Pow(e.base, n - 1)), _diff(e.base))
    if isinstance(e, Call):
        du = _diff(e.arg)
        if e.func == "exp":
            return Mul(Call("exp", e.arg), du)
        if e.func == "ln":
            return Div(du, e.arg)
        if e.func == "abs":
            return Mul(Call("sign", e.arg), du)
        if e.func == "sign":
            return Const(0)  # zero a.e.; the kink itself maps to 0
    raise TypeError(f"not an Expr: {e!r}")


def simplify(e: Expr) -> Expr:
    """Constant folding plus *1 / *0 / ^1 / ^0 elimination."""
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Call):
        return Call(e.func, simplify(e.arg))
    if isinstance(e, Neg):
        op = simplify(e.operand)
        if isinstance(op, Const):
            return Const(-op.value)
        if isinstance(op, Neg):
            return op.operand
        return Neg(op)
    if isinstance(e, Pow):
        base = simplify(e.base)
        n = e.exponent
        if n == 1:
            return base
        if n == 0:
            return Const(1)
        if isinstance(base, Const) and _is_integral(n) and int(n) >= 0:
            return Const(base.value ** int(n))
        return Pow(base, n)

    left = simplify(e.left)
    right = simplify(e.right)
    lc = left.value if isinstance(left, Const) else None
    rc = right.value if isinstance(right, Const) else None
    if isinstance(e, Add):
        if lc == 0:
            return right
        if rc == 0:
            return left
        if lc is not None and rc is not None:
            return Const(lc + rc)
        return Add(left, right)
    if isinstance(e, Sub):
        if rc == 0:
            return left
        if lc is not None and rc is not None:
            return Const(lc - rc)
        if lc == 0:
            return simplify(Neg(right))
        return Sub(left, right)
    if isinstance(e, Mul):
        if lc == 0 or rc == 0:
            return Const(0)
        if lc == 1:
            return right
        if rc == 1:
            return left
        if lc == -1:
            return simplify(Neg(right))
        if rc == -1:
            return simplify(Neg(left))
        if lc is not None and rc is not None:
            return Const(lc * rc)
        return Mul(left, right)
    if isinstance(e, Div):
        if rc == 1:
            return left
        if lc is not None and rc is not None and rc != 0:
            return Const(Fraction(lc) / Fraction(rc)
                         if isinstance(lc, (int, Fraction)) and isinstance(rc, (int, Fraction))
                         else lc / rc)
        return Div(left, right)
    raise TypeError(f"not an Expr: {e!r}")


# ---------------------------------------------------------------------------
# Function models

NEG_INF = float("-inf")
INF = float("inf")


@dataclass(frozen=True)
class FunctionModel:
    """An evaluatable function with its exact derivative and metadata.

    ``domain`` is an open interval.  ``convex_for_all_q`` marks models for
    which |f'|**q is convex on the domain for every q >= 1; builtins carry
    this by construction, user expressions get sampled instead and any
    certificate built from them is flagged advisory.
    """

    name: str
    expr: Expr
    deriv: Expr
    domain: tuple = (NEG_INF, INF)
    convex_for_all_q: bool = False
    provenance: str = "numerically-probed"  # builtin | user-asserted | numerically-probed

    def value(self, x):
        return evaluate(self.expr, x)

    def derivative(self, x):
        return evaluate(self.deriv, x)

    def contains(self, lo, hi) -> bool:
        return self.domain[0] < lo and hi < self.domain[1]

    def __str__(self) -> str:
        return self.name


def from_expression(text: str, *, name: str | None = None,
                    domain: tuple = (NEG_INF, INF),
                    assume_convex: bool = False) -> FunctionModel:
    """Build a model from expression text, deriving f' symbolically."""
    expr = parse(text)
    return FunctionModel(
        name=name or text,
        expr=expr,
        deriv=differentiate(expr),
        domain=domain,
        convex_for_all_q=assume_convex,
        provenance="user-asserted" if assume_convex else "numerically-probed",
    )


def power_model(n: int, side: str = "pos") -> FunctionModel:
    """x**n on one side of zero.

    |f'|**q = |n|**q * |x|**((n-1)q) is convex on either half line for
    every q >= 1 (the exponent is >= q for n >= 2 and <= -q for n <= -1),
    and for n >= 1 the same holds on all of R, so positive powers get the
    full real line as domain.
    """
    if not isinstance(n, int) or n == 0:
        raise DomainError(f"power model needs a nonzero integer exponent, got {n!r}")
    if side not in ("pos", "neg"):
        raise DomainError(f"side must be 'pos' or 'neg', got {side!r}")
    if n >= 1:
        domain = (NEG_INF, INF) if side == "pos" else (NEG_INF, 0.0)
    else:
        domain = (0.0, INF) if side == "pos" else (NEG_INF, 0.0)
    expr = Pow(X, n)
    suffix = "" if side == "pos" else ":neg"
    return FunctionModel(
        name=f"pow:{n}{suffix}",
        expr=expr,
        deriv=differentiate(expr),
        domain=domain,
        convex_for_all_q=True,
        provenance="builtin",
    )


def _builtin(name, expr, domain) -> FunctionModel:
    return FunctionModel(
        name=name,
        expr=expr,
        deriv=differentiate(expr),
        domain=domain,
        convex_for_all_q=True,
        provenance="builtin",
    )


def builtin_corpus() -> list[FunctionModel]:
    """The stock battery of functions with proven-convex |f'|**q.

    Positive powers and the exponentials live on all of R; reciprocal
    powers and -ln(x) on (0, inf).
    """
    return [
        power_model(2),
        power_model(3),
        power_model(4),
        power_model(-2),
        _builtin("reciprocal", Div(Const(1), X), (0.0, INF)),
        _builtin("neglog", Neg(Call("ln", X)), (0.0, INF)),
        _builtin("exp", Call("exp", X), (NEG_INF, INF)),
        _builtin("negexp", Call("exp", Neg(X)), (NEG_INF, INF)),
    ]


_CORPUS_BY_NAME = None


def resolve_function(name_or_expr: str, *,
                     assume_convex: bool = False) -> FunctionModel:
    """Look up a corpus name ("pow:3", "reciprocal", "neglog", "exp",
    "negexp") or fall back to parsing the text as an expression."""
    global _CORPUS_BY_NAME
    if _CORPUS_BY_NAME is None:
        _CORPUS_BY_NAME = {m.name: m for m in builtin_corpus()}
    if name_or_expr in _CORPUS_BY_NAME:
        return _CORPUS_BY_NAME[name_or_expr]
    if name_or_expr.startswith("pow:"):
        try:
            n = int(name_or_expr[4:])
        except ValueError:
            raise DomainError(f"bad power name {name_or_expr!r}") from None
        return power_model(n)
    return from_expression(name_or_expr, assume_convex=assume_convex)


# ---------------------------------------------------------------------------
# Validation helpers

def derivative_matches_fd(f: FunctionModel, lo, hi, *, points: int = 64,
                          h: float = 1e-6, tol: float = 1e-6) -> bool:
    """Central finite difference agrees with the symbolic derivative.

    Mixed absolute/relative comparison at ``tol`` over equispaced interior
    sample points.
    """
    lo, hi = float(lo), float(hi)
    for i in range(points):
        x = lo + (hi - lo) * (i + 0.5) / points
        sym = float(f.derivative(x))
        fd = (float(f.value(x + h)) - float(f.value(x - h))) / (2 * h)
        if abs(fd - sym) > tol * (1 + abs(sym)):
            return False
    return True


def probe_convexity(f: FunctionModel, q, lo, hi, *, grid: int = 64,
                    slack: float = 1e-12) -> bool:
    """Midpoint-convexity check of |f'|**q on a grid x grid sample of [lo, hi].

    Midpoints of grid points land on the twice-refined grid, so a single
    pass of 2*grid - 1 evaluations covers every (x, y) pair.
    """
    lo, hi = float(lo), float(hi)
    fine = 2 * grid - 1
    vals = []
    for k in range(fine):
        x = lo + (hi - lo) * k / (fine - 1)
        vals.append(abs(float(f.derivative(x))) ** float(q))
    for i in range(grid):
        for j in range(i, grid):
            if vals[i + j] > (vals[2 * i] + vals[2 * j]) / 2 + slack:
                return False
    return True
