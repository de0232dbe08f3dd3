"""End-to-end Las Vegas discrete-log attack.

Each iteration samples fresh multipliers, evaluates the corresponding curve
points into a monomial matrix, extracts the left kernel, hands it to a
zero-pattern solver, and decodes any qualifying vector into the logarithm.
Every decoded answer is verified against the target before being returned,
so the attack can fail to answer but can never answer wrongly.

Row layout per iteration: 3n' - 1 rows from multiples of the generator, then
l + 1 rows from multiples of the negated target (one more generator row than
target rows, so a full-support block is always mixed).  Multipliers are
distinct within each block; a cross-block point collision is an "accident"
that immediately yields the logarithm and is reported separately.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil, comb
from typing import Callable, Optional

from .analysis import success_model
from .curve import GroupSpec, Point
from .errors import BudgetExceededError, InvariantViolationError
from .linalg import MatrixFq, left_kernel
from .problem_l import (
    DEFAULT_ENUMERATION_BUDGET,
    ProblemLInstance,
    ZeroPatternSolution,
    solve_alg2,
    solve_exhaustive,
)
from .veronese import MonomialBasis, basis, evaluate_row

SOLVER_ALG2 = "alg2"
SOLVER_EXHAUSTIVE = "exhaustive"
SOLVER_ALG2_THEN_EXHAUSTIVE = "alg2-then-exhaustive"
SOLVER_CHOICES = (SOLVER_ALG2, SOLVER_EXHAUSTIVE, SOLVER_ALG2_THEN_EXHAUSTIVE)

REJECT_SUPPORT_SIZE = "support-size"
REJECT_MISSING_BLOCK = "missing-block"
REJECT_ZERO_DENOMINATOR = "zero-denominator"
REJECT_NOT_FOUND = "not-found"

FAILURE_BUDGET = "iteration-budget-exhausted"


@dataclass
class AttackConfig:
    """Parameters for one attack run.  l defaults to 3 * n_prime."""

    group: GroupSpec
    target: Point
    n_prime: int = 1
    l: Optional[int] = None
    solver: str = SOLVER_ALG2_THEN_EXHAUSTIVE
    max_iterations: Optional[int] = None
    seed: int = 0
    accident_check: bool = True
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET

    def __post_init__(self):
        if self.n_prime < 1:
            raise ValueError("n_prime must be >= 1")
        if self.l is None:
            self.l = 3 * self.n_prime
        if self.l < 1:
            raise ValueError("l must be >= 1")
        if self.solver not in SOLVER_CHOICES:
            raise ValueError(f"solver must be one of {SOLVER_CHOICES}, got {self.solver!r}")
        p = self.group.order
        if 3 * self.n_prime + self.l > p - 1:
            raise ValueError(
                f"need 3n' + l <= p - 1 distinct multipliers, got {3 * self.n_prime + self.l} > {p - 1}"
            )
        if not self.group.curve.contains(self.target):
            raise ValueError("target point is not on the curve")
        if self.max_iterations is None:
            self.max_iterations = default_max_iterations(p, self.n_prime, self.l, self.solver)
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    @property
    def rows(self) -> int:
        return 3 * self.n_prime + self.l

    @property
    def monomials(self) -> MonomialBasis:
        return basis(self.n_prime)


def default_max_iterations(p: int, n_prime: int, l: int, solver: str) -> int:
    """Budget sized so a default run succeeds with high probability (~1 - e^-10)."""
    model = success_model(p, n_prime, l)
    predicted = model.per_iteration
    if solver == SOLVER_ALG2:
        predicted *= float(model.alg2_conditional)
    predicted = max(predicted, 1e-12)
    return max(1, ceil(10.0 / predicted))


@dataclass(frozen=True)
class IterationSample:
    """One iteration's multipliers, points, and assembled matrix."""

    index: int
    multipliers_p: tuple[int, ...]
    multipliers_q: tuple[int, ...]
    points_p: tuple[Point, ...]
    points_q: tuple[Point, ...]
    matrix: MatrixFq


@dataclass
class IterationRecord:
    """Per-iteration log entry; solution vectors use the fixed monomial-row ordering."""

    iteration: int
    multipliers_p: tuple[int, ...] = ()
    multipliers_q: tuple[int, ...] = ()
    accident: Optional[tuple[int, int]] = None
    kernel_dim: Optional[int] = None
    found_by: Optional[str] = None
    reject_reasons: list[str] = field(default_factory=list)
    solution_vector: Optional[tuple[int, ...]] = None
    m: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "multipliers_p": list(self.multipliers_p),
            "multipliers_q": list(self.multipliers_q),
            "accident": list(self.accident) if self.accident else None,
            "kernel_dim": self.kernel_dim,
            "found_by": self.found_by,
            "reject_reasons": list(self.reject_reasons),
            "solution_vector": list(self.solution_vector) if self.solution_vector else None,
            "m": self.m,
        }


@dataclass
class AttackOutcome:
    m: Optional[int]
    iterations_used: int
    records: list[IterationRecord]
    accident: Optional[tuple[int, int]] = None
    failure_reason: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        return self.m is not None


def iteration_rng(seed: int, index: int) -> random.Random:
    """Named substream per (seed, iteration): reproducible regardless of scheduling."""
    return random.Random(f"{seed}:{index}")


def _distinct_multipliers(rng: random.Random, count: int, p: int) -> list[int]:
    chosen: list[int] = []
    seen: set[int] = set()
    while len(chosen) < count:
        r = rng.randrange(1, p)
        if r in seen:
            continue
        seen.add(r)
        chosen.append(r)
    return chosen


def sample_iteration(cfg: AttackConfig, index: int) -> IterationSample:
    """Sample I and J (distinct within themselves) and assemble the matrix.

    Generator rows come first, then rows for multiples of -target, matching
    the decode layout.  Cross-block collisions are not resampled here; they
    are the accidents handled by detect_accident.
    """
    rng = iteration_rng(cfg.seed, index)
    p = cfg.group.order
    mult_p = _distinct_multipliers(rng, 3 * cfg.n_prime - 1, p)
    mult_q = _distinct_multipliers(rng, cfg.l + 1, p)
    curve = cfg.group.curve
    neg_target = curve.negate(cfg.target)
    points_p = tuple(cfg.group.scalar_mul(r) for r in mult_p)
    points_q = tuple(curve.scalar_mul(r, neg_target) for r in mult_q)
    mb = cfg.monomials
    q = curve.q
    rows = [evaluate_row(mb, pt, q) for pt in points_p]
    rows += [evaluate_row(mb, pt, q) for pt in points_q]
    matrix = MatrixFq.from_rows(q, rows)
    return IterationSample(index, tuple(mult_p), tuple(mult_q), points_p, points_q, matrix)


def detect_accident(sample: IterationSample) -> Optional[tuple[int, int]]:
    """Cross-block point collision r * P == r' * (-Q), reported as (r, r').

    Such a collision makes two matrix rows identical and directly reveals the
    logarithm as -r * r'^-1 mod p.
    """
    q_index = {pt: sample.multipliers_q[j] for j, pt in enumerate(sample.points_q)}
    for i, pt in enumerate(sample.points_p):
        if pt in q_index:
            return sample.multipliers_p[i], q_index[pt]
    return None


def accident_logarithm(r: int, r_prime: int, p: int) -> int:
    return -r * pow(r_prime, -1, p) % p


def decode_solution(
    vector: tuple[int, ...],
    multipliers_p: tuple[int, ...],
    multipliers_q: tuple[int, ...],
    order: int,
) -> tuple[Optional[int], Optional[str]]:
    """Decode a kernel vector into the logarithm, or reject with a reason.

    Accepted vectors have support of size exactly 3n' (the case where the
    interpolation argument pins the point sum), touch both blocks, and have a
    nonzero target-block multiplier sum.  Returns sum(I over support) times
    the inverse of sum(J over support) mod the group order.
    """
    n_p = len(multipliers_p)
    if len(vector) != n_p + len(multipliers_q):
        raise ValueError("vector length does not match the multiplier layout")
    support = [i for i, v in enumerate(vector) if v]
    if len(support) != n_p + 1:
        return None, REJECT_SUPPORT_SIZE
    p_part = [i for i in support if i < n_p]
    q_part = [i - n_p for i in support if i >= n_p]
    if not p_part or not q_part:
        return None, REJECT_MISSING_BLOCK
    a = sum(multipliers_p[i] for i in p_part) % order
    b = sum(multipliers_q[j] for j in q_part) % order
    if b == 0:
        return None, REJECT_ZERO_DENOMINATOR
    return a * pow(b, -1, order) % order, None


def _verify(cfg: AttackConfig, m: int) -> None:
    if cfg.group.scalar_mul(m) != cfg.target:
        raise InvariantViolationError(f"decoded m = {m} failed verification against the target")


def execute_iteration(cfg: AttackConfig, index: int) -> IterationRecord:
    """Run a single attack iteration; record.m is set only after verification."""
    sample = sample_iteration(cfg, index)
    record = IterationRecord(
        iteration=index,
        multipliers_p=sample.multipliers_p,
        multipliers_q=sample.multipliers_q,
    )
    if cfg.accident_check:
        accident = detect_accident(sample)
        if accident is not None:
            m = accident_logarithm(accident[0], accident[1], cfg.group.order)
            _verify(cfg, m)
            record.accident = accident
            record.found_by = "accident"
            record.m = m
            return record
    kernel = left_kernel(sample.matrix)
    record.kernel_dim = kernel.dim
    if kernel.dim == 0:
        record.reject_reasons.append(REJECT_NOT_FOUND)
        return record
    instance = ProblemLInstance(kernel, cfg.l)
    p = cfg.group.order

    def accept(vec: tuple[int, ...]) -> bool:
        return decode_solution(vec, sample.multipliers_p, sample.multipliers_q, p)[0] is not None

    solution: Optional[ZeroPatternSolution] = None
    found_by = None
    if cfg.solver in (SOLVER_ALG2, SOLVER_ALG2_THEN_EXHAUSTIVE):
        candidate = solve_alg2(instance)
        if candidate is None:
            record.reject_reasons.append(f"alg2:{REJECT_NOT_FOUND}")
        else:
            m, reason = decode_solution(candidate.vector, sample.multipliers_p, sample.multipliers_q, p)
            if m is not None:
                solution, found_by = candidate, SOLVER_ALG2
            else:
                record.reject_reasons.append(f"alg2:{reason}")
    if solution is None and cfg.solver in (SOLVER_EXHAUSTIVE, SOLVER_ALG2_THEN_EXHAUSTIVE):
        candidate = solve_exhaustive(instance, accept=accept, budget=cfg.enumeration_budget)
        if candidate is None:
            record.reject_reasons.append(f"exhaustive:{REJECT_NOT_FOUND}")
        else:
            solution, found_by = candidate, SOLVER_EXHAUSTIVE
    if solution is not None:
        m, _ = decode_solution(solution.vector, sample.multipliers_p, sample.multipliers_q, p)
        _verify(cfg, m)
        record.found_by = found_by
        record.solution_vector = solution.vector
        record.m = m
    return record


def run_attack(cfg: AttackConfig, on_record: Optional[Callable[[IterationRecord], None]] = None) -> AttackOutcome:
    """Repeat iterations until a verified logarithm is found or the budget runs out.

    The output is never wrong, only possibly absent: a returned m always
    satisfies m * generator == target.
    """
    if cfg.target.is_identity:
        return AttackOutcome(m=0, iterations_used=0, records=[])
    records: list[IterationRecord] = []
    for index in range(1, cfg.max_iterations + 1):
        record = execute_iteration(cfg, index)
        records.append(record)
        if on_record is not None:
            on_record(record)
        if record.m is not None:
            return AttackOutcome(
                m=record.m,
                iterations_used=index,
                records=records,
                accident=record.accident,
            )
    return AttackOutcome(
        m=None,
        iterations_used=cfg.max_iterations,
        records=records,
        failure_reason=FAILURE_BUDGET,
    )


def subset_sum_oracle(
    multipliers_p: tuple[int, ...] | list[int],
    multipliers_q: tuple[int, ...] | list[int],
    m_true: int,
    p: int,
    budget: int = 2_000_000,
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Ground-truth check used only by harnesses that know the logarithm.

    Scans all 3n'-subsets of the row slots (generator slots contribute +r,
    target slots contribute -m * r') for one that sums to 0 mod p, touches
    both blocks, and has nonzero target-block sum.  Returns the first witness
    subset of row indices, in lexicographic order.
    """
    if m_true % p == 0:
        raise ValueError("m_true must be nonzero mod p (the target may not be the identity)")
    n_p = len(multipliers_p)
    n = n_p + len(multipliers_q)
    k = n_p + 1
    if comb(n, k) > budget:
        raise BudgetExceededError(f"C({n}, {k}) exceeds the oracle budget {budget}")
    values = [r % p for r in multipliers_p] + [(-m_true * r) % p for r in multipliers_q]
    for subset in combinations(range(n), k):
        if subset[0] >= n_p or subset[-1] < n_p:
            continue
        if sum(values[i] for i in subset) % p:
            continue
        b = sum(multipliers_q[i - n_p] for i in subset if i >= n_p) % p
        if b == 0:
            continue
        return True, subset
    return False, None
