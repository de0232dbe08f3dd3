#!/usr/bin/env python3
"""Sweep per-iteration success rates against the probability model.

For each configured group and degree, runs independent single-iteration
trials with the exhaustive solver and prints observed rate, the model value
1 - (1 - 1/p)^C, and the 95% confidence interval.
"""

import argparse
import random
import time

from lvecdlp.analysis import binomial_confidence_interval, success_model
from lvecdlp.attack import AttackConfig, execute_iteration
from lvecdlp.verification import fixture_medium, fixture_small


def run_cell(group, n_prime, trials, seed):
    p = group.order
    successes = 0
    for trial in range(1, trials + 1):
        m = random.Random(f"{seed}:m:{trial}").randrange(1, p)
        cfg = AttackConfig(
            group=group,
            target=group.scalar_mul(m),
            n_prime=n_prime,
            solver="exhaustive",
            seed=seed,
            accident_check=False,
            max_iterations=1,
        )
        record = execute_iteration(cfg, trial)
        successes += record.m is not None
    return successes


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    cells = [
        (fixture_small(), 1),
        (fixture_medium(), 1),
        (fixture_medium(), 2),
    ]
    print(f"{'p':>5} {'nprime':>6} {'C':>5} {'observed':>9} {'model':>7} {'ci95':>18} {'secs':>6}")
    for group, n_prime in cells:
        model = success_model(group.order, n_prime, 3 * n_prime)
        started = time.perf_counter()
        successes = run_cell(group, n_prime, args.trials, args.seed)
        elapsed = time.perf_counter() - started
        rate = successes / args.trials
        low, high = binomial_confidence_interval(successes, args.trials)
        print(
            f"{group.order:>5} {n_prime:>6} {model.subsets:>5} {rate:>9.4f} "
            f"{model.per_iteration:>7.4f} [{low:.4f}, {high:.4f}] {elapsed:>6.1f}"
        )


if __name__ == "__main__":
    main()
