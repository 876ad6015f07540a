"""High-precision Steffensen-type root finding and benchmark tools."""

from .analysis import (
    CocEstimate,
    ErrorConstantReport,
    coc,
    empirical_ratio,
    error_constant,
    stencil_coefficients,
    usable_floor,
)
from .driver import (
    CONVERGED,
    DENOMINATOR_BREAKDOWN,
    DIVERGED,
    DOMAIN_ERROR,
    FIXED_COUNT_COMPLETED,
    MAX_ITERATIONS_REACHED,
    SUCCESS_STATUSES,
    IterationTrace,
    SolveConfig,
    TraceEntry,
    refine_root,
    solve,
)
from .errors import (
    BreakdownError,
    DomainError,
    InsufficientDataError,
    InvalidPrecisionError,
    ParseError,
    RefinementError,
    SimpleRootError,
    StefbenchError,
)
from .functions import (
    BUILTINS,
    FUNCTION_NAMES,
    CountingFunction,
    ScalarFunction,
    from_expression,
    get_function,
)
from .jets import TaylorJet, jet_eval
from .methods import (
    METHOD_TAGS,
    TABLE_METHODS,
    MethodKind,
    StepOutcome,
    central_diff_slope,
    claimed_order,
    cordero_step,
    dehghan1_step,
    dehghan2_step,
    dehghan3_step,
    jain_step,
    kou_fd_step,
    kou_step,
    mkdf_step,
    steffensen_step,
)
from .precision import MIN_BITS, PrecisionContext, make_context
from .reference import (
    BenchmarkRecord,
    BenchReport,
    CellDiagnostic,
    ReferenceCell,
    load_reference_cells,
    run_benchmark,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTINS",
    "BenchReport",
    "BenchmarkRecord",
    "BreakdownError",
    "CONVERGED",
    "CellDiagnostic",
    "CocEstimate",
    "CountingFunction",
    "DENOMINATOR_BREAKDOWN",
    "DIVERGED",
    "DOMAIN_ERROR",
    "DomainError",
    "ErrorConstantReport",
    "FIXED_COUNT_COMPLETED",
    "FUNCTION_NAMES",
    "InsufficientDataError",
    "InvalidPrecisionError",
    "IterationTrace",
    "MAX_ITERATIONS_REACHED",
    "METHOD_TAGS",
    "MIN_BITS",
    "MethodKind",
    "ParseError",
    "PrecisionContext",
    "ReferenceCell",
    "RefinementError",
    "SUCCESS_STATUSES",
    "ScalarFunction",
    "SimpleRootError",
    "SolveConfig",
    "StefbenchError",
    "StepOutcome",
    "TABLE_METHODS",
    "TaylorJet",
    "TraceEntry",
    "central_diff_slope",
    "claimed_order",
    "coc",
    "cordero_step",
    "dehghan1_step",
    "dehghan2_step",
    "dehghan3_step",
    "empirical_ratio",
    "error_constant",
    "from_expression",
    "get_function",
    "jain_step",
    "jet_eval",
    "kou_fd_step",
    "kou_step",
    "load_reference_cells",
    "make_context",
    "mkdf_step",
    "refine_root",
    "run_benchmark",
    "solve",
    "steffensen_step",
    "stencil_coefficients",
    "usable_floor",
]
