"""Expression parsing and generic evaluation.

The grammar (documented in the README as EBNF) is deliberately small:

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' integer]
    atom   := NUMBER | 'x' | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := sin | cos | exp | ln | arctan | sqrt | abs

Precedence is ^ above unary minus above '*'/'/' above '+'/'-', binary
operators associate left. Exponents are restricted to integer literals so
series composition stays exact. Error positions are byte offsets from the
start of the source text.

Evaluation is generic over an "ops" adapter: :class:`HPOps` evaluates to a
high-precision scalar, :class:`JetOps` to a :class:`~stefbench.jets.TaylorJet`.
Either way a decimal literal is converted at working precision directly from
its text, never through a machine float.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import jets
from .errors import DomainError, ParseError
from .precision import PrecisionContext

FUNCTION_NAMES = ("sin", "cos", "exp", "ln", "arctan", "sqrt", "abs")


# -- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    text: str


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str  # 'neg' or one of FUNCTION_NAMES
    arg: object


@dataclass(frozen=True)
class Binary:
    op: str  # '+', '-', '*', '/'
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


# -- tokenizer -------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<num>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[()+\-*/^])
  | (?P<ws>\s+)
""",
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


# -- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, symbol: str):
        kind, value, pos = self.peek()
        if kind == "op" and value == symbol:
            return self.advance()
        raise ParseError(f"expected '{symbol}'", pos)

    def parse(self):
        node = self.expr()
        kind, value, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {value!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                node = Binary(value, node, self.term())
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.advance()
                node = Binary(value, node, self.unary())
            else:
                return node

    def unary(self):
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return Unary("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        kind, value, pos = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            node = Pow(node, self.integer_exponent())
        return node

    def integer_exponent(self) -> int:
        sign = 1
        kind, value, pos = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            sign = -1
            kind, value, pos = self.peek()
        if kind != "num":
            raise ParseError("exponent must be a literal integer", pos)
        if "." in value or "e" in value or "E" in value:
            raise ParseError(f"non-integer exponent {value!r}", pos)
        self.advance()
        return sign * int(value)

    def atom(self):
        kind, value, pos = self.advance()
        if kind == "num":
            return Const(value)
        if kind == "ident":
            if value == "x":
                return Var()
            if value in FUNCTION_NAMES:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Unary(value, arg)
            raise ParseError(f"unknown identifier {value!r}", pos)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        shown = value if value else "end of input"
        raise ParseError(f"expected operand, found {shown!r}", pos)


def parse(text: str):
    """Parse expression text into an AST; raises :class:`ParseError`."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text).parse()


# -- unparse ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "pow": 4, "atom": 5}


def _prec(node) -> int:
    if isinstance(node, Binary):
        return _PREC[node.op]
    if isinstance(node, Unary):
        return _PREC["neg"] if node.op == "neg" else _PREC["atom"]
    if isinstance(node, Pow):
        return _PREC["pow"]
    return _PREC["atom"]


def unparse(node) -> str:
    """Render an AST back to source; reparsing yields an identical tree."""
    if isinstance(node, Const):
        return node.text
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Unary):
        if node.op == "neg":
            inner = unparse(node.arg)
            if _prec(node.arg) < _PREC["neg"]:
                inner = f"({inner})"
            return f"-{inner}"
        return f"{node.op}({unparse(node.arg)})"
    if isinstance(node, Pow):
        base = unparse(node.base)
        # '<=' and not '<': power does not chain in the grammar, so a Pow
        # base (reachable only via explicit parentheses) must keep them.
        if _prec(node.base) <= _PREC["pow"]:
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Binary):
        me = _PREC[node.op]
        left = unparse(node.left)
        if _prec(node.left) < me:
            left = f"({left})"
        right = unparse(node.right)
        if _prec(node.right) <= me:
            right = f"({right})"
        joiner = f" {node.op} " if node.op in "+-" else node.op
        return f"{left}{joiner}{right}"
    raise TypeError(f"not an AST node: {node!r}")


# -- evaluation --------------------------------------------------------------


class HPOps:
    """Scalar evaluation adapter over a precision context."""

    def __init__(self, ctx: PrecisionContext):
        self.ctx = ctx

    def const(self, text: str):
        return self.ctx.mpf(text)

    def var(self, x):
        return self.ctx.mpf(x)

    def sin(self, v):
        return self.ctx.sin(v)

    def cos(self, v):
        return self.ctx.cos(v)

    def exp(self, v):
        return self.ctx.exp(v)

    def ln(self, v):
        return self.ctx.ln(v)

    def arctan(self, v):
        return self.ctx.atan(v)

    def sqrt(self, v):
        return self.ctx.sqrt(v)

    def abs(self, v):
        return self.ctx.fabs(v)


class JetOps:
    """Taylor-jet evaluation adapter of a fixed truncation order."""

    def __init__(self, ctx: PrecisionContext, order: int):
        self.ctx = ctx
        self.order = order

    def const(self, text: str):
        return jets.constant_jet(self.ctx.mpf(text), self.order, self.ctx)

    def var(self, p):
        return jets.seed_jet(p, self.order, self.ctx)

    def sin(self, v):
        return jets.jet_sin(v)

    def cos(self, v):
        return jets.jet_cos(v)

    def exp(self, v):
        return jets.jet_exp(v)

    def ln(self, v):
        return jets.jet_ln(v)

    def arctan(self, v):
        return jets.jet_atan(v)

    def sqrt(self, v):
        return jets.jet_sqrt(v)

    def abs(self, v):
        return jets.jet_abs(v)


def evaluate(node, x, ops):
    """Evaluate ``node`` at ``x`` (already adapted via ``ops.var``)."""
    if isinstance(node, Const):
        return ops.const(node.text)
    if isinstance(node, Var):
        return x
    if isinstance(node, Unary):
        val = evaluate(node.arg, x, ops)
        if node.op == "neg":
            return -val
        try:
            return getattr(ops, node.op)(val)
        except DomainError as exc:
            raise DomainError(f"{exc} in {unparse(node)!r}") from None
    if isinstance(node, Pow):
        base = evaluate(node.base, x, ops)
        try:
            return base ** node.exponent
        except ZeroDivisionError:
            raise DomainError(
                f"zero raised to negative power in {unparse(node)!r}"
            ) from None
    if isinstance(node, Binary):
        left = evaluate(node.left, x, ops)
        right = evaluate(node.right, x, ops)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        try:
            return left / right
        except ZeroDivisionError:
            raise DomainError(f"division by zero in {unparse(node)!r}") from None
    raise TypeError(f"not an AST node: {node!r}")
