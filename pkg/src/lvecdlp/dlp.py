"""Independent discrete-log oracles, used to plant and verify ground truth."""

from __future__ import annotations

from math import isqrt

from .curve import GroupSpec, Point
from .errors import BudgetExceededError

BSGS_ORDER_LIMIT = 1 << 32
EXHAUSTIVE_ORDER_LIMIT = 100_000


def solve_bsgs(group: GroupSpec, target: Point, max_order: int = BSGS_ORDER_LIMIT) -> int:
    """Baby-step giant-step: the unique m in [0, p) with m * generator == target.

    Baby steps are keyed by the normalized point, so lookups are exact.
    """
    p = group.order
    if p > max_order:
        raise BudgetExceededError(f"baby-step giant-step limited to order <= {max_order}")
    if not group.curve.contains(target):
        raise ValueError("target point is not on the curve")
    step_count = isqrt(p - 1) + 1
    curve = group.curve
    table: dict[Point, int] = {}
    walker = Point.identity()
    for j in range(step_count):
        table.setdefault(walker, j)
        walker = curve.add(walker, group.generator)
    giant = curve.negate(curve.scalar_mul(step_count, group.generator))
    current = target
    for i in range(step_count + 1):
        if current in table:
            return (i * step_count + table[current]) % p
        current = curve.add(current, giant)
    raise ValueError("target is not in the group generated by the generator")


def solve_exhaustive_dlp(group: GroupSpec, target: Point, max_order: int = EXHAUSTIVE_ORDER_LIMIT) -> int:
    """Linear scan oracle; cross-check for the baby-step giant-step solver."""
    p = group.order
    if p > max_order:
        raise BudgetExceededError(f"exhaustive discrete log limited to order <= {max_order}")
    if not group.curve.contains(target):
        raise ValueError("target point is not on the curve")
    current = Point.identity()
    for m in range(p):
        if current == target:
            return m
        current = group.curve.add(current, group.generator)
    raise ValueError("target is not in the group generated by the generator")
