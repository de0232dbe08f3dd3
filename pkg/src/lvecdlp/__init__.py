"""Las Vegas ECDLP attack toolkit.

Reduces the elliptic curve discrete logarithm problem to finding a vector
with many zero coordinates in the left kernel of a small matrix over F_q,
and ships the exact linear algebra, solvers, probability model, and
verification harness needed to run and empirically test the reduction at
desk scale.
"""

from .analysis import (
    ParameterChoice,
    ProbabilityModel,
    audit_partition_counts,
    partition_count_formula,
    partition_count_oracle,
    per_iteration_success,
    select_parameters,
    success_model,
)
from .attack import (
    AttackConfig,
    AttackOutcome,
    IterationRecord,
    IterationSample,
    SOLVER_CHOICES,
    decode_solution,
    detect_accident,
    run_attack,
    sample_iteration,
    subset_sum_oracle,
)
from .curve import Curve, GroupSpec, Point, find_prime_order_curve
from .dlp import solve_bsgs, solve_exhaustive_dlp
from .errors import BudgetExceededError, InvariantViolationError
from .field import FieldElement, PrimeField, is_prime
from .linalg import KernelBasis, MatrixFq, eliminate_block, left_kernel, rref, right_kernel
from .problem_l import (
    ProblemLInstance,
    ZeroPatternSolution,
    conditional_success_estimate,
    solve_alg2,
    solve_exhaustive,
)
from .veronese import MonomialBasis, basis, evaluate_row

__version__ = "0.1.0"
