#!/usr/bin/env python3
"""Calibrate the block-elimination solver against the l^2 / C heuristic.

Harvests solvable zero-pattern instances from fresh attack iterations, runs
the block solver on each, and reports its conditional success rate next to
the heuristic estimate.  Also re-checks soundness of every returned vector.
"""

import argparse
import random
import time

from lvecdlp.attack import AttackConfig, sample_iteration
from lvecdlp.linalg import in_row_space, left_kernel
from lvecdlp.problem_l import ProblemLInstance, conditional_success_estimate, solve_alg2, solve_exhaustive
from lvecdlp.verification import fixture_medium


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=300, help="solvable instances to collect")
    parser.add_argument("--nprime", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    group = fixture_medium()
    p = group.order
    l = 3 * args.nprime
    heuristic = conditional_success_estimate(args.nprime, l)

    started = time.perf_counter()
    solvable = 0
    finds = 0
    unsound = 0
    trial = 0
    while solvable < args.instances:
        trial += 1
        m = random.Random(f"{args.seed}:m:{trial}").randrange(1, p)
        cfg = AttackConfig(
            group=group,
            target=group.scalar_mul(m),
            n_prime=args.nprime,
            solver="exhaustive",
            seed=args.seed,
            accident_check=False,
            max_iterations=1,
        )
        sample = sample_iteration(cfg, trial)
        kernel = left_kernel(sample.matrix)
        instance = ProblemLInstance(kernel, l)
        if solve_exhaustive(instance) is None:
            continue
        solvable += 1
        candidate = solve_alg2(instance)
        if candidate is None:
            continue
        finds += 1
        sound = len(candidate.zero_positions) >= l and in_row_space(
            kernel.vectors, candidate.vector, kernel.p
        )
        unsound += not sound
    elapsed = time.perf_counter() - started

    conditional = finds / solvable
    print(f"group order {p}, nprime {args.nprime}, l {l}")
    print(f"solvable instances: {solvable} (from {trial} iterations)")
    print(f"block solver finds: {finds} (conditional {conditional:.4f})")
    print(f"heuristic l^2/C: {float(heuristic):.4f} ({heuristic.numerator}/{heuristic.denominator})")
    if conditional > 0:
        print(f"ratio measured/heuristic: {conditional / float(heuristic):.2f}")
    print(f"unsound returns: {unsound} (must be 0)")
    print(f"elapsed: {elapsed:.1f}s")


if __name__ == "__main__":
    main()
