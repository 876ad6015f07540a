"""One-step iteration kernels.

Every kernel is a pure function ``(f, x, ctx) -> StepOutcome`` taking f as
a callable ``f(x, ctx)``. Denominators are checked against
``ctx.breakdown_floor`` and raise :class:`BreakdownError` when too small;
no kernel falls back to a different formula, so a benchmark run shows
exactly where each printed method fails.

The difference ``D = f(x + f(x)) - f(x - f(x))`` that appears twice in the
two-line methods is computed once and reused, which changes nothing
mathematically and halves the f-call count.

``mkdf_step`` and ``kou_step`` with theta = -1 and the central slope are
the same method in two notations. To keep them bit-for-bit identical they
share one update routine (:func:`_kou_iterate`); the mkdf form
y = x - 2 f(x)^2 / D is recovered from y = x - f(x)/s with
s = D / (2 f(x)) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BreakdownError
from .jets import jet_eval
from .precision import PrecisionContext

METHOD_TAGS = (
    "steffensen",
    "jain",
    "dehghan1",
    "dehghan2",
    "dehghan3",
    "cordero",
    "mkdf",
    "kou",
    "kou_fd",
)

# Methods appearing in the reference tables, in table row order.
TABLE_METHODS = (
    "steffensen",
    "jain",
    "dehghan1",
    "dehghan2",
    "dehghan3",
    "cordero",
    "mkdf",
)


@dataclass(frozen=True)
class StepOutcome:
    next: object
    aux: object | None
    evaluations: int


@dataclass(frozen=True)
class MethodKind:
    """A method identifier; ``theta`` only applies to the kou family."""

    tag: str
    theta: object = None

    def __post_init__(self):
        if self.tag not in METHOD_TAGS:
            known = ", ".join(METHOD_TAGS)
            raise ValueError(f"unknown method {self.tag!r} (known: {known})")

    def stepper(self):
        """Bind this kind to a ``(f, x, ctx) -> StepOutcome`` callable."""
        if self.tag == "kou":
            theta = -1 if self.theta is None else self.theta

            def kou_with_jet_slope(f, x, ctx):
                slope = jet_eval(f, x, 1, ctx).coeffs[1]
                return kou_step(f, x, theta, slope, ctx)

            return kou_with_jet_slope
        return _STEPPERS[self.tag]

    def label(self) -> str:
        if self.tag == "kou":
            theta = -1 if self.theta is None else self.theta
            return f"kou(theta={theta})"
        return self.tag


def _check_denominator(value, what: str, ctx: PrecisionContext):
    if abs(value) < ctx.breakdown_floor:
        raise BreakdownError(
            f"denominator {what} fell below the breakdown floor "
            f"(|{ctx.nstr(value, 5)}| < 2^(-0.9*{ctx.bits}))"
        )
    return value


def central_diff_slope(f, x, ctx: PrecisionContext):
    """[f(x + f(x)) - f(x - f(x))] / (2 f(x)), exactly as written.

    No step-size heuristics: the offset is f(x) itself. The caller is
    expected to have checked that |f(x)| is above the convergence floor.
    """
    fx = f(x, ctx)
    d = f(x + fx, ctx) - f(x - fx, ctx)
    _check_denominator(d, "f(x+f(x)) - f(x-f(x))", ctx)
    # 2*fx cannot be near zero when d passed the floor check, but a zero
    # residual would still divide by zero; guard it the same way.
    _check_denominator(fx, "f(x)", ctx)
    return d / (2 * fx)


def steffensen_step(f, x, ctx: PrecisionContext) -> StepOutcome:
    fx = f(x, ctx)
    d = f(x + fx, ctx) - fx
    _check_denominator(d, "f(x+f(x)) - f(x)", ctx)
    return StepOutcome(x - fx**2 / d, None, 2)


def jain_step(f, x, ctx: PrecisionContext) -> StepOutcome:
    fx = f(x, ctx)
    d = f(x + fx, ctx) - fx
    _check_denominator(d, "f(x+f(x)) - f(x)", ctx)
    y = x - fx**2 / d
    fy = f(y, ctx)
    _check_denominator(fx - fy, "f(x) - f(y)", ctx)
    return StepOutcome(x - fx**3 / (d * (fx - fy)), y, 3)


def dehghan1_step(f, x, ctx: PrecisionContext) -> StepOutcome:
    fx = f(x, ctx)
    d = f(x + fx, ctx) - f(x - fx, ctx)
    _check_denominator(d, "f(x+f(x)) - f(x-f(x))", ctx)
    y = x - 2 * fx**2 / d
    fy = f(y, ctx)
    return StepOutcome(x - 2 * fx * (fx + fy) / d, y, 4)


def dehghan2_step(f, x, ctx: PrecisionContext) -> StepOutcome:
    fx = f(x, ctx)
    d = f(x + fx, ctx) - f(x - fx, ctx)
    _check_denominator(d, "f(x+f(x)) - f(x-f(x))", ctx)
    y = x + 2 * fx**2 / d
    fy = f(y, ctx)
    return StepOutcome(x - 2 * fx * (fy - fx) / d, y, 4)


def dehghan3_step(f, x, ctx: PrecisionContext) -> StepOutcome:
    """The three-step variant exactly as printed.

    x' = x - 2 f(x) / [f(y) fu + f(x) fv] with fu, fv the symmetric
    differences at x and y. The printed update is not consistent with the
    other kernels dimensionally (the affine probe f(x) = x from x = 1
    yields 3/4, not the root), and it does not converge on the built-in
    functions; it is kept verbatim so the benchmark reports that honestly.
    """
    fx = f(x, ctx)
    fu = f(x + fx, ctx) - f(x - fx, ctx)
    _check_denominator(fu, "f(x+f(x)) - f(x-f(x))", ctx)
    y = x + 2 * fx**2 / fu
    fy = f(y, ctx)
    fv = f(y + fy, ctx) - f(y - fy, ctx)
    denom = fy * fu + fx * fv
    _check_denominator(denom, "f(y)*fu + f(x)*fv", ctx)
    return StepOutcome(x - 2 * fx / denom, y, 6)


def cordero_step(f, x, ctx: PrecisionContext) -> StepOutcome:
    fx = f(x, ctx)
    d = f(x + fx, ctx) - f(x - fx, ctx)
    _check_denominator(d, "f(x+f(x)) - f(x-f(x))", ctx)
    t = 2 * fx**2 / d
    y = x - t
    fy = f(y, ctx)
    _check_denominator(2 * fy - fx, "2f(y) - f(x)", ctx)
    return StepOutcome(x - t * (fy - fx) / (2 * fy - fx), y, 4)


def _kou_iterate(f, x, theta, s, fx, ctx: PrecisionContext):
    """Shared update for the kou family given the slope s and f(x).

    Returns (y, next). Kept as a single code path so mkdf and
    kou(theta=-1, central slope) agree to the last bit.
    """
    y = x - fx / s
    fy = f(y, ctx)
    nxt = x - theta * (fx + fy) / s
    if theta != 1:
        _check_denominator(fx - fy, "f(x) - f(y)", ctx)
        nxt = nxt - (1 - theta) * fx**2 / (s * (fx - fy))
    return y, nxt


def kou_step(f, x, theta, s, ctx: PrecisionContext) -> StepOutcome:
    """Kou family member with parameter theta and supplied slope s."""
    _check_denominator(s, "slope", ctx)
    fx = f(x, ctx)
    y, nxt = _kou_iterate(f, x, theta, s, fx, ctx)
    return StepOutcome(nxt, y, 2)


def kou_fd_step(f, x, ctx: PrecisionContext) -> StepOutcome:
    """theta = -1 with the forward-difference slope [f(x+f(x)) - f(x)]/f(x)."""
    fx = f(x, ctx)
    _check_denominator(fx, "f(x)", ctx)
    num = f(x + fx, ctx) - fx
    _check_denominator(num, "f(x+f(x)) - f(x)", ctx)
    s = num / fx
    y, nxt = _kou_iterate(f, x, -1, s, fx, ctx)
    return StepOutcome(nxt, y, 3)


def mkdf_step(f, x, ctx: PrecisionContext) -> StepOutcome:
    """Fourth-order derivative-free kernel: kou theta = -1 with the
    central difference quotient as slope."""
    fx = f(x, ctx)
    d = f(x + fx, ctx) - f(x - fx, ctx)
    _check_denominator(d, "f(x+f(x)) - f(x-f(x))", ctx)
    _check_denominator(fx, "f(x)", ctx)
    s = d / (2 * fx)
    y, nxt = _kou_iterate(f, x, -1, s, fx, ctx)
    return StepOutcome(nxt, y, 4)


_STEPPERS = {
    "steffensen": steffensen_step,
    "jain": jain_step,
    "dehghan1": dehghan1_step,
    "dehghan2": dehghan2_step,
    "dehghan3": dehghan3_step,
    "cordero": cordero_step,
    "mkdf": mkdf_step,
    "kou_fd": kou_fd_step,
}


def claimed_order(kind: MethodKind) -> int:
    """The convergence order each method is supposed to have."""
    if kind.tag == "kou":
        theta = -1 if kind.theta is None else kind.theta
        return 4 if theta == -1 else 3
    return {
        "steffensen": 2,
        "jain": 3,
        "dehghan1": 3,
        "dehghan2": 3,
        "dehghan3": 3,
        "cordero": 4,
        "mkdf": 4,
        "kou_fd": 3,
    }[kind.tag]
