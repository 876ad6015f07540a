"""Scalar test functions: the seven built-ins plus user expressions.

A :class:`ScalarFunction` bundles the AST with its metadata (a 6-decimal
reference-root seed and the default initial guess used by the benchmark).
It evaluates either to a high-precision scalar (``f(x, ctx)``) or to a
Taylor jet (``f.eval_jet(p, order, ctx)``).
"""

from __future__ import annotations

from . import expr, jets
from .precision import PrecisionContext


class ScalarFunction:
    def __init__(
        self,
        name: str,
        source: str,
        reference_root: str | None = None,
        default_x0: str | None = None,
    ):
        self.name = name
        self.source = source
        self.ast = expr.parse(source)
        self.reference_root = reference_root
        self.default_x0 = default_x0

    def __call__(self, x, ctx: PrecisionContext):
        ops = expr.HPOps(ctx)
        return expr.evaluate(self.ast, ops.var(x), ops)

    def eval_jet(self, p, order: int, ctx: PrecisionContext) -> jets.TaylorJet:
        ops = expr.JetOps(ctx, order)
        return expr.evaluate(self.ast, ops.var(p), ops)

    def __repr__(self) -> str:
        return f"ScalarFunction({self.name}: {self.source})"


class CountingFunction:
    """Wraps a function and counts scalar evaluations.

    Jet evaluations are deliberately not counted: the count models
    f-calls of the iteration formulas, and slopes obtained from a jet
    are a separate derivative estimate.
    """

    def __init__(self, fn):
        self.fn = fn
        self.calls = 0

    def __call__(self, x, ctx):
        self.calls += 1
        return self.fn(x, ctx)

    def __getattr__(self, name):
        return getattr(self.fn, name)


# Built-in test functions with their 6-decimal roots and the initial
# guesses the benchmark tables use.
_BUILTIN_SPECS = [
    ("f1", "sin(x)^2 - x^2 + 1", "1.404492", "1"),
    ("f2", "x^2 - exp(x) - 3*x + 2", "0.257530", "0.7"),
    ("f3", "cos(x) - x", "0.739085", "1"),
    ("f4", "cos(x) - x*exp(x) + x^2", "0.639154", "1"),
    ("f5", "exp(x) - 1.5 - arctan(x)", "0.767653", "1"),
    ("f6", "8*x - cos(x) - 2*x^2", "0.128077", "1"),
    ("f7", "ln(x^2 + x + 2) - x + 1", "4.152590", "3.6"),
]

BUILTINS: dict[str, ScalarFunction] = {
    name: ScalarFunction(name, source, root, x0)
    for name, source, root, x0 in _BUILTIN_SPECS
}

FUNCTION_NAMES = tuple(BUILTINS)


def get_function(name: str) -> ScalarFunction:
    try:
        return BUILTINS[name]
    except KeyError:
        known = ", ".join(FUNCTION_NAMES)
        raise KeyError(f"unknown function {name!r} (known: {known})") from None


def from_expression(
    text: str,
    name: str = "<expr>",
    reference_root: str | None = None,
    default_x0: str | None = None,
) -> ScalarFunction:
    """Build a ScalarFunction from expression text (raises ParseError)."""
    return ScalarFunction(name, text, reference_root, default_x0)
