from ._version import __version__
from .exceptions import (
    BudgetExceededError,
    EliminationError,
    InfiniteRootSetError,
    InterpolationError,
    InvariantViolation,
    PerturbationError,
    SegmentConditionError,
    SubdivisionError,
    SystemParseError,
)
from .execution_config import DefaultExecutionConfig, ExecutionConfig
from .polynomials import PolySystem, SparsePoly, height_stats, parse_system
from .polytope import bezout_number, mixed_volume, newton_polytope, normalized_volume, q_polytope
from .resultant_engine import monomial_reduction, square_up, univariate_reduction
from .rur import compute_rur, count_roots, feasibility_check, verify_roots
from .dimension import compute_dimension
from .density import koiran_test, paper_report, prime_window_count
