"""Arithmetic expressions in the variables s, u and v.

Curve components and marching-scale factors are supplied as text, parsed
into immutable ASTs, differentiated symbolically (the frame machinery needs
clean fourth derivatives) and evaluated pointwise.  The grammar:

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | power
    power  := atom ("^" atom)?
    atom   := number | "pi" | "s" | "u" | "v" | func "(" expr ")" | "(" expr ")"
    func   := "sin" | "cos" | "tan" | "exp" | "ln" | "sqrt"

``^`` needs a constant exponent: integer exponents of magnitude <= 8 are
expanded into repeated multiplication, anything else becomes exp(k*ln(x)).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

VARIABLES = ("s", "u", "v")
FUNCTIONS = ("sin", "cos", "tan", "exp", "ln", "sqrt")

_MAX_UNROLLED_EXPONENT = 8


class ExprError(Exception):
    """Base class for expression failures."""


class ParseError(ExprError):
    """Source text does not conform to the grammar.

    ``offset`` is the byte offset of the offending token in the UTF-8
    encoding of the source.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class EvalDomainError(ExprError):
    """Evaluation left the real domain (ln/sqrt/division)."""

    def __init__(self, message: str, node: "Expr"):
        super().__init__(f"{message} in '{unparse(node)}'")
        self.node = node


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or a function name
    arg: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # "+" | "-" | "*" | "/"
    left: "Expr"
    right: "Expr"


Expr = Union[Const, Var, Unary, Binary]

ZERO = Const(0.0)
ONE = Const(1.0)


def _is_const(e: Expr, value: float) -> bool:
    return isinstance(e, Const) and e.value == value


# Smart constructors apply light simplification only (constant folding,
# neutral/absorbing elements); folding is skipped whenever it would produce
# a non-finite constant or need values outside the real domain.

def const(value: float) -> Const:
    return Const(float(value))


def var(name: str) -> Var:
    if name not in VARIABLES:
        raise ValueError(f"unknown variable {name!r}")
    return Var(name)


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        folded = a.value + b.value
        if math.isfinite(folded):
            return Const(folded)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Binary("+", a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        folded = a.value - b.value
        if math.isfinite(folded):
            return Const(folded)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    return Binary("-", a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        folded = a.value * b.value
        if math.isfinite(folded):
            return Const(folded)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return Binary("*", a, b)


def div(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0.0:
        folded = a.value / b.value
        if math.isfinite(folded):
            return Const(folded)
    if _is_const(a, 0.0) and not _is_const(b, 0.0):
        return ZERO
    if _is_const(b, 1.0):
        return a
    return Binary("/", a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Unary) and a.op == "neg":
        return a.arg
    return Unary("neg", a)


def func(name: str, arg: Expr) -> Expr:
    if name not in FUNCTIONS:
        raise ValueError(f"unknown function {name!r}")
    if isinstance(arg, Const):
        try:
            folded = _apply_function(name, arg.value)
        except ValueError:
            pass
        else:
            if math.isfinite(folded):
                return Const(folded)
    return Unary(name, arg)


def power(base: Expr, exponent: float) -> Expr:
    """Desugared constant power: unrolled product or exp(k*ln(base))."""
    k = float(exponent)
    if k == int(k) and abs(k) <= _MAX_UNROLLED_EXPONENT:
        n = int(abs(k))
        if n == 0:
            return ONE
        result = base
        for _ in range(n - 1):
            result = mul(result, base)
        return div(ONE, result) if k < 0 else result
    return func("exp", mul(const(k), func("ln", base)))


def _apply_function(name: str, x: float) -> float:
    if name == "sin":
        return math.sin(x)
    if name == "cos":
        return math.cos(x)
    if name == "tan":
        return math.tan(x)
    if name == "exp":
        return math.exp(x)
    if name == "ln":
        if x <= 0.0:
            raise ValueError("ln of non-positive value")
        return math.log(x)
    if name == "sqrt":
        if x < 0.0:
            raise ValueError("sqrt of negative value")
        return math.sqrt(x)
    raise ValueError(f"unknown function {name!r}")


def evaluate(e: Expr, s: float, u: float = 0.0, v: float = 0.0) -> float:
    """Evaluate at a point; raises EvalDomainError naming the subexpression."""
    if not (math.isfinite(s) and math.isfinite(u) and math.isfinite(v)):
        raise ValueError("evaluation point must be finite")
    # Derivative trees share subtree objects heavily; memoizing on node
    # identity keeps evaluation linear in the number of distinct nodes.
    return _eval(e, (s, u, v), {})


def _eval(e: Expr, point: tuple[float, float, float], memo: dict[int, float]) -> float:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return point[VARIABLES.index(e.name)]
    key = id(e)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if isinstance(e, Unary):
        x = _eval(e.arg, point, memo)
        if e.op == "neg":
            result = -x
        else:
            try:
                result = _apply_function(e.op, x)
            except ValueError as exc:
                raise EvalDomainError(str(exc), e) from None
            except OverflowError:
                raise EvalDomainError(f"overflow in {e.op}", e) from None
    else:
        left = _eval(e.left, point, memo)
        right = _eval(e.right, point, memo)
        if e.op == "+":
            result = left + right
        elif e.op == "-":
            result = left - right
        elif e.op == "*":
            result = left * right
        elif right == 0.0:
            raise EvalDomainError("division by zero", e)
        else:
            result = left / right
    memo[key] = result
    return result


def diff(e: Expr, name: str) -> Expr:
    """Exact symbolic derivative with respect to one variable."""
    if name not in VARIABLES:
        raise ValueError(f"unknown variable {name!r}")
    # The memo maps subtree identity to its derivative so that shared
    # subtrees stay shared in the result instead of being re-derived.
    return _diff(e, name, {})


def _diff(e: Expr, name: str, memo: dict[int, Expr]) -> Expr:
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == name else ZERO
    key = id(e)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if isinstance(e, Unary):
        inner = _diff(e.arg, name, memo)
        if e.op == "neg":
            result = neg(inner)
        elif e.op == "sin":
            result = mul(func("cos", e.arg), inner)
        elif e.op == "cos":
            result = neg(mul(func("sin", e.arg), inner))
        elif e.op == "tan":
            c = func("cos", e.arg)
            result = div(inner, mul(c, c))
        elif e.op == "exp":
            result = mul(e, inner)
        elif e.op == "ln":
            result = div(inner, e.arg)
        else:  # sqrt
            result = div(inner, mul(const(2.0), e))
    else:
        da = _diff(e.left, name, memo)
        db = _diff(e.right, name, memo)
        if e.op == "+":
            result = add(da, db)
        elif e.op == "-":
            result = sub(da, db)
        elif e.op == "*":
            result = add(mul(da, e.right), mul(e.left, db))
        else:
            result = div(sub(mul(da, e.right), mul(e.left, db)),
                         mul(e.right, e.right))
    memo[key] = result
    return result


def variables(e: Expr) -> frozenset[str]:
    """Names of the variables an expression actually references."""
    if isinstance(e, Const):
        return frozenset()
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, Unary):
        return variables(e.arg)
    return variables(e.left) | variables(e.right)


# Printing: precedence levels, 1 = additive, 2 = multiplicative, 3 = unary
# minus, 4 = self-delimiting atom.

def _precedence(e: Expr) -> int:
    if isinstance(e, Binary):
        return 1 if e.op in "+-" else 2
    if isinstance(e, Unary) and e.op == "neg":
        return 3
    return 4


def unparse(e: Expr) -> str:
    """Render to source text that parses back to an equivalent expression."""
    if isinstance(e, Const):
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            inner = unparse(e.arg)
            if _precedence(e.arg) < 3:
                inner = f"({inner})"
            return f"-{inner}"
        return f"{e.op}({unparse(e.arg)})"
    mine = _precedence(e)
    left = unparse(e.left)
    if _precedence(e.left) < mine:
        left = f"({left})"
    right = unparse(e.right)
    # -, / do not associate to the right; "+"/"*" tolerate equal precedence
    if _precedence(e.right) < mine or (_precedence(e.right) == mine and e.op in "-/"):
        right = f"({right})"
    return f"{left} {e.op} {right}"


_TOKEN_NUMBER = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_TOKEN_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class _Tokenizer:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def byte_offset(self, pos: int | None = None) -> int:
        where = self.pos if pos is None else pos
        return len(self.src[:where].encode("utf-8"))

    def next(self) -> tuple[str, str, int]:
        src = self.src
        while self.pos < len(src) and src[self.pos].isspace():
            self.pos += 1
        start = self.pos
        if self.pos >= len(src):
            return ("eof", "", start)
        ch = src[self.pos]
        if ch.isdigit() or ch == ".":
            m = _TOKEN_NUMBER.match(src, self.pos)
            if not m:
                raise ParseError(f"malformed number near {ch!r}", self.byte_offset(start))
            self.pos = m.end()
            return ("number", m.group(), start)
        if ch.isalpha() or ch == "_":
            m = _TOKEN_NAME.match(src, self.pos)
            if not m:  # unicode letter outside the ASCII identifier set
                raise ParseError(f"unexpected character {ch!r}", self.byte_offset(start))
            self.pos = m.end()
            return ("name", m.group(), start)
        if ch in "+-*/^()":
            self.pos += 1
            return (ch, ch, start)
        raise ParseError(f"unexpected character {ch!r}", self.byte_offset(start))


class _Parser:
    def __init__(self, src: str):
        self._tok = _Tokenizer(src)
        self._current = self._tok.next()

    def _advance(self) -> tuple[str, str, int]:
        tok = self._current
        self._current = self._tok.next()
        return tok

    def _expect(self, kind: str) -> tuple[str, str, int]:
        if self._current[0] != kind:
            raise ParseError(
                f"expected {kind!r}, found {self._current[1] or 'end of input'!r}",
                self._tok.byte_offset(self._current[2]),
            )
        return self._advance()

    def parse(self) -> Expr:
        e = self._expr()
        if self._current[0] != "eof":
            raise ParseError(
                f"unexpected trailing input {self._current[1]!r}",
                self._tok.byte_offset(self._current[2]),
            )
        return e

    def _expr(self) -> Expr:
        e = self._term()
        while self._current[0] in ("+", "-"):
            op = self._advance()[0]
            rhs = self._term()
            e = add(e, rhs) if op == "+" else sub(e, rhs)
        return e

    def _term(self) -> Expr:
        e = self._factor()
        while self._current[0] in ("*", "/"):
            op = self._advance()[0]
            rhs = self._factor()
            e = mul(e, rhs) if op == "*" else div(e, rhs)
        return e

    def _factor(self) -> Expr:
        if self._current[0] == "-":
            self._advance()
            return neg(self._factor())
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._current[0] != "^":
            return base
        _, _, caret_pos = self._advance()
        exponent = self._atom()
        if not isinstance(exponent, Const):
            raise ParseError("exponent must be constant", self._tok.byte_offset(caret_pos))
        return power(base, exponent.value)

    def _atom(self) -> Expr:
        kind, text, start = self._current
        if kind == "number":
            self._advance()
            return const(float(text))
        if kind == "(":
            self._advance()
            e = self._expr()
            self._expect(")")
            return e
        if kind == "name":
            self._advance()
            if text == "pi":
                return const(math.pi)
            if text in VARIABLES:
                return Var(text)
            if text in FUNCTIONS:
                self._expect("(")
                arg = self._expr()
                self._expect(")")
                return func(text, arg)
            raise ParseError(f"unknown identifier {text!r}", self._tok.byte_offset(start))
        raise ParseError(
            f"expected expression, found {text or 'end of input'!r}",
            self._tok.byte_offset(start),
        )


def parse(src: str) -> Expr:
    """Parse source text into an expression AST."""
    return _Parser(src).parse()


def evaluate_constant(src: str) -> float:
    """Parse and evaluate text that must not reference any variable."""
    e = parse(src)
    names = variables(e)
    if names:
        raise ValueError(f"{src!r} is not constant: uses {sorted(names)}")
    return evaluate(e, 0.0, 0.0, 0.0)
