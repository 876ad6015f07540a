"""Iteration driver: run a kernel to a termination condition.

``solve`` never raises for numerical trouble; every failure mode ends up
in the trace status so a benchmark over misbehaving methods completes and
reports. Statuses:

    converged                |f(x_n)| at or below the stop tolerance
    fixed_count_completed    benchmark mode ran its exact step count
    max_iterations_reached   tolerance mode ran out of steps
    denominator_breakdown    a kernel denominator fell below the floor
    diverged                 |x_n| exceeded the divergence bound
    domain_error             f was evaluated outside its domain
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import BreakdownError, DomainError, RefinementError
from .functions import CountingFunction
from .methods import MethodKind, mkdf_step
from .precision import PrecisionContext

CONVERGED = "converged"
FIXED_COUNT_COMPLETED = "fixed_count_completed"
MAX_ITERATIONS_REACHED = "max_iterations_reached"
DENOMINATOR_BREAKDOWN = "denominator_breakdown"
DIVERGED = "diverged"
DOMAIN_ERROR = "domain_error"

SUCCESS_STATUSES = (CONVERGED, FIXED_COUNT_COMPLETED)


@dataclass
class SolveConfig:
    max_iterations: int = 100
    fixed_iterations: int | None = None
    f_tolerance: object = None  # defaults to ctx.convergence_floor
    divergence_bound: object = None  # defaults to 1e10


class TraceEntry(NamedTuple):
    n: int
    x: object
    fx: object
    e: object  # x - reference_root, or None when no root is known


@dataclass
class IterationTrace:
    iterates: list = field(default_factory=list)
    status: str = ""
    f_call_total: int = 0

    @property
    def final(self) -> TraceEntry:
        return self.iterates[-1]

    def residuals(self):
        return [abs(entry.fx) for entry in self.iterates]

    def errors(self):
        """|e_n| for every entry; requires a reference root."""
        if not self.iterates or self.iterates[0].e is None:
            return None
        return [abs(entry.e) for entry in self.iterates]


def solve(
    method,
    f,
    x0,
    cfg: SolveConfig,
    ctx: PrecisionContext,
    reference_root=None,
) -> IterationTrace:
    """Run ``method`` from ``x0`` per the termination rules of ``cfg``."""
    kind = MethodKind(method) if isinstance(method, str) else method
    stepper = kind.stepper()

    if cfg.fixed_iterations is not None and cfg.fixed_iterations < 1:
        raise ValueError("fixed_iterations must be >= 1")
    if cfg.max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    tol = ctx.convergence_floor if cfg.f_tolerance is None else ctx.mpf(cfg.f_tolerance)
    if tol < ctx.convergence_floor:
        raise ValueError("f_tolerance must not be below ctx.convergence_floor")
    bound = ctx.mpf("1e10") if cfg.divergence_bound is None else ctx.mpf(cfg.divergence_bound)

    fixed = cfg.fixed_iterations
    # In fixed mode the tolerance no longer stops the run, but a residual at
    # the convergence floor still does: differencing pure roundoff would only
    # manufacture a breakdown.
    stop_floor = ctx.convergence_floor if fixed is not None else tol

    counted = CountingFunction(f)
    root = None if reference_root is None else ctx.mpf(reference_root)

    def entry(n, x, fx):
        e = None if root is None else x - root
        return TraceEntry(n, x, fx, e)

    trace = IterationTrace()
    x = ctx.mpf(x0)
    try:
        fx = counted(x, ctx)
    except DomainError:
        trace.status = DOMAIN_ERROR
        trace.f_call_total = counted.calls
        return trace
    trace.iterates.append(entry(0, x, fx))

    if abs(fx) <= stop_floor:
        trace.status = CONVERGED
        trace.f_call_total = counted.calls
        return trace

    steps = fixed if fixed is not None else cfg.max_iterations
    status = None
    for n in range(1, steps + 1):
        try:
            outcome = stepper(counted, x, ctx)
        except BreakdownError:
            status = DENOMINATOR_BREAKDOWN
            break
        except DomainError:
            status = DOMAIN_ERROR
            break
        x = outcome.next
        try:
            fx = counted(x, ctx)
        except DomainError:
            status = DOMAIN_ERROR
            break
        trace.iterates.append(entry(n, x, fx))
        if abs(x) > bound:
            status = DIVERGED
            break
        if abs(fx) <= stop_floor:
            status = CONVERGED
            break
    if status is None:
        status = FIXED_COUNT_COMPLETED if fixed is not None else MAX_ITERATIONS_REACHED

    trace.status = status
    trace.f_call_total = counted.calls
    return trace


def refine_root(f, seed, ctx: PrecisionContext):
    """Polish a root seed to |f(x*)| <= ctx.convergence_floor using mkdf.

    Table roots are printed to 6 decimals; error analysis needs the full
    working precision, so every e_n in this package is measured against a
    refined root, never against the printed seed.
    """
    x = ctx.mpf(seed)
    for _ in range(60):
        try:
            fx = f(x, ctx)
        except DomainError as exc:
            raise RefinementError(f"f undefined during refinement: {exc}") from exc
        if abs(fx) <= ctx.convergence_floor:
            return x
        try:
            x = mkdf_step(f, x, ctx).next
        except (BreakdownError, DomainError) as exc:
            raise RefinementError(f"refinement step failed: {exc}") from exc
    try:
        if abs(f(x, ctx)) <= ctx.convergence_floor:
            return x
    except DomainError:
        pass
    raise RefinementError(
        f"no residual below the convergence floor within 60 iterations from {seed}"
    )
