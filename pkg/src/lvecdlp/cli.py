"""Command-line surface: solve, experiment, verify, params, find-curve, dlp.

Text formats
------------
Curve: ``q a b`` (three integers).  Point: ``x y`` in affine coordinates, or
the literal token ``O`` for the identity.  These forms appear in manifests
and debug dumps; the flags below take the integers individually.

Config files are flat ``key = value`` text, one pair per line, ``#`` starts
a comment.  Keys mirror the long CLI flags with underscores (``q``, ``a``,
``b``, ``gx``, ``gy``, ``order``, ``qx``, ``qy``, ``nprime``, ``l``,
``solver``, ``seed``, ``trials``, ``m``, ``max_iterations``,
``accident_check``, ``enum_budget``, ``timing``).  Explicit CLI flags
override config file values.

Determinism contract: with the same config and seed, manifests, CSVs, and
JSON-lines logs are byte-identical across runs.  Wall-clock timing is
therefore captured only when ``--timing`` is passed (the timing fields hold
0.0 otherwise); the console summary always shows real wall time.

Exit codes: 0 success, 2 usage error, 3 validation error, 4 budget or
iteration exhaustion, 5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .analysis import (
    binomial_confidence_interval,
    select_parameters,
    success_model,
)
from .attack import (
    AttackConfig,
    SOLVER_CHOICES,
    SOLVER_EXHAUSTIVE,
    execute_iteration,
    run_attack,
)
from .curve import Curve, GroupSpec, Point, curve_to_text, find_prime_order_curve, point_to_text
from .dlp import solve_bsgs, solve_exhaustive_dlp
from .errors import BudgetExceededError, InvariantViolationError
from .field import PrimeField
from .verification import SUITE_NAMES, run_suites

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_BUDGET = 4
EXIT_INVARIANT = 5

CSV_HEADER = "trial,m,success,solver,kernel_dim,reject_reason,elapsed"
SCHEMA_VERSION = 1

_TRUE_TOKENS = {"1", "true", "on", "yes"}
_FALSE_TOKENS = {"0", "false", "off", "no"}


class UsageError(ValueError):
    """Missing or malformed command-line settings."""


def parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in _TRUE_TOKENS:
        return True
    if lowered in _FALSE_TOKENS:
        return False
    raise ValueError(f"expected a boolean (on/off), got {text!r}")


class Settings:
    """Merged view of config file values and CLI flags (flags win)."""

    def __init__(self, args: argparse.Namespace):
        self._file: dict[str, str] = {}
        config = getattr(args, "config", None)
        if config:
            self._file = parse_config_file(config)
        self._args = args

    def _raw(self, key: str):
        cli_value = getattr(self._args, key, None)
        if cli_value is not None:
            return cli_value
        return self._file.get(key)

    def get_int(self, key: str, default: Optional[int] = None, required: bool = False) -> Optional[int]:
        raw = self._raw(key)
        if raw is None:
            if required:
                raise UsageError(f"missing required setting '{key}'")
            return default
        return int(raw)

    def get_str(self, key: str, default: Optional[str] = None) -> Optional[str]:
        raw = self._raw(key)
        return default if raw is None else str(raw)

    def get_bool(self, key: str, default: bool) -> bool:
        raw = self._raw(key)
        if raw is None:
            return default
        if isinstance(raw, bool):
            return raw
        return _parse_bool(str(raw))


def build_group(settings: Settings) -> GroupSpec:
    q = settings.get_int("q", required=True)
    a = settings.get_int("a", required=True)
    b = settings.get_int("b", required=True)
    gx = settings.get_int("gx", required=True)
    gy = settings.get_int("gy", required=True)
    order = settings.get_int("order", required=True)
    curve = Curve(PrimeField(q), a, b)
    return GroupSpec(curve, curve.point(gx, gy), order)


def build_target(settings: Settings, group: GroupSpec) -> Point:
    qx = settings.get_int("qx", required=True)
    qy = settings.get_int("qy", required=True)
    return group.curve.point(qx, qy)


def _config_echo(group: GroupSpec, keys_values: dict) -> dict:
    echo = {
        "q": group.curve.q,
        "a": group.curve.a,
        "b": group.curve.b,
        "gx": group.generator.x,
        "gy": group.generator.y,
        "order": group.order,
    }
    echo.update(keys_values)
    return echo


def write_json(path: str, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def cmd_solve(args: argparse.Namespace) -> int:
    settings = Settings(args)
    group = build_group(settings)
    target = build_target(settings, group)
    n_prime = settings.get_int("nprime", default=1)
    l = settings.get_int("l")
    seed = settings.get_int("seed", default=0)
    solver = settings.get_str("solver", default="alg2-then-exhaustive")
    max_iterations = settings.get_int("max_iterations")
    accident_check = settings.get_bool("accident_check", default=True)
    enum_budget = settings.get_int("enum_budget", default=5_000_000)
    timing = settings.get_bool("timing", default=False)
    manifest_path = settings.get_str("manifest", default="manifest.json")
    log_path = settings.get_str("log")

    cfg = AttackConfig(
        group=group,
        target=target,
        n_prime=n_prime,
        l=l,
        solver=solver,
        max_iterations=max_iterations,
        seed=seed,
        accident_check=accident_check,
        enumeration_budget=enum_budget,
    )

    log_handle = open(log_path, "w") if log_path else None
    try:
        def sink(record):
            if log_handle is not None:
                log_handle.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")

        started = time.perf_counter()
        outcome = run_attack(cfg, on_record=sink)
        elapsed = time.perf_counter() - started
        summary = {
            "success": outcome.succeeded,
            "m": outcome.m,
            "iterations_used": outcome.iterations_used,
            "accident": list(outcome.accident) if outcome.accident else None,
            "failure_reason": outcome.failure_reason,
            "wall_time_s": round(elapsed, 6) if timing else 0.0,
        }
        if log_handle is not None:
            log_handle.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    finally:
        if log_handle is not None:
            log_handle.close()

    config_echo = _config_echo(
        group,
        {
            "qx": target.x,
            "qy": target.y,
            "nprime": cfg.n_prime,
            "l": cfg.l,
            "solver": cfg.solver,
            "seed": cfg.seed,
            "max_iterations": cfg.max_iterations,
            "accident_check": "on" if cfg.accident_check else "off",
            "enum_budget": cfg.enumeration_budget,
            "timing": "on" if timing else "off",
        },
    )
    manifest = {
        "tool": {"name": "lvecdlp", "version": __version__, "schema": SCHEMA_VERSION},
        "command": "solve",
        "config": config_echo,
        "curve": curve_to_text(group.curve),
        "generator": point_to_text(group.generator),
        "target": point_to_text(target),
        "records": [record.to_dict() for record in outcome.records],
        "summary": summary,
    }
    if manifest_path:
        write_json(manifest_path, manifest)

    if outcome.succeeded:
        print(f"m = {outcome.m} (verified, {outcome.iterations_used} iteration(s))")
        if manifest_path:
            print(f"manifest written to {manifest_path}")
        print(f"wall time: {elapsed:.3f}s")
        return EXIT_OK
    print(f"failed: {outcome.failure_reason} after {outcome.iterations_used} iteration(s)", file=sys.stderr)
    if manifest_path:
        print(f"manifest written to {manifest_path}", file=sys.stderr)
    return EXIT_BUDGET


def cmd_experiment(args: argparse.Namespace) -> int:
    import random as random_mod

    settings = Settings(args)
    group = build_group(settings)
    trials = settings.get_int("trials", required=True)
    if trials < 1:
        raise UsageError(f"trials must be >= 1, got {trials}")
    n_prime = settings.get_int("nprime", default=1)
    l = settings.get_int("l")
    if l is None:
        l = 3 * n_prime
    seed = settings.get_int("seed", default=0)
    solver = settings.get_str("solver", default=SOLVER_EXHAUSTIVE)
    fixed_m = settings.get_int("m")
    accident_check = settings.get_bool("accident_check", default=False)
    enum_budget = settings.get_int("enum_budget", default=5_000_000)
    timing = settings.get_bool("timing", default=False)
    csv_path = settings.get_str("csv", default="experiment.csv")
    json_path = settings.get_str("json", default="experiment.json")

    p = group.order
    rows = [CSV_HEADER]
    successes = 0
    accidents = 0
    kernel_dims: dict[int, int] = {}
    started = time.perf_counter()
    for trial in range(1, trials + 1):
        m = fixed_m if fixed_m is not None else random_mod.Random(f"{seed}:m:{trial}").randrange(1, p)
        cfg = AttackConfig(
            group=group,
            target=group.scalar_mul(m),
            n_prime=n_prime,
            l=l,
            solver=solver,
            max_iterations=1,
            seed=seed,
            accident_check=accident_check,
            enumeration_budget=enum_budget,
        )
        trial_started = time.perf_counter()
        record = execute_iteration(cfg, trial)
        trial_elapsed = time.perf_counter() - trial_started
        success = record.m is not None
        if success and record.m != m % p:
            raise InvariantViolationError(
                f"trial {trial}: recovered {record.m} but planted {m % p}"
            )
        successes += int(success)
        accidents += int(record.accident is not None)
        dim = record.kernel_dim if record.kernel_dim is not None else -1
        kernel_dims[dim] = kernel_dims.get(dim, 0) + 1
        reason = "+".join(record.reject_reasons) if record.reject_reasons else "none"
        elapsed_field = f"{trial_elapsed:.6f}" if timing else "0.0"
        rows.append(f"{trial},{m},{int(success)},{solver},{dim},{reason},{elapsed_field}")
    wall = time.perf_counter() - started

    Path(csv_path).write_text("\n".join(rows) + "\n")

    rate = successes / trials
    ci_low, ci_high = binomial_confidence_interval(successes, trials)
    model = success_model(p, n_prime, l)
    summary = {
        "tool": {"name": "lvecdlp", "version": __version__, "schema": SCHEMA_VERSION},
        "command": "experiment",
        "config": _config_echo(
            group,
            {
                "nprime": n_prime,
                "l": l,
                "solver": solver,
                "seed": seed,
                "trials": trials,
                "m": fixed_m,
                "accident_check": "on" if accident_check else "off",
                "enum_budget": enum_budget,
                "timing": "on" if timing else "off",
            },
        ),
        "summary": {
            "trials": trials,
            "successes": successes,
            "rate": rate,
            "ci95": [ci_low, ci_high],
            "accidents": accidents,
            "kernel_dims": {str(k): v for k, v in sorted(kernel_dims.items())},
            "model": model.to_dict(),
            "wall_time_s": round(wall, 6) if timing else 0.0,
        },
    }
    write_json(json_path, summary)

    print(f"trials: {trials}, successes: {successes}, rate: {rate:.4f} (95% CI [{ci_low:.4f}, {ci_high:.4f}])")
    print(f"model per-iteration: {model.per_iteration:.4f} with C = {model.subsets}")
    print(f"csv written to {csv_path}; summary written to {json_path}")
    print(f"wall time: {wall:.3f}s")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    reports = run_suites(args.suite, seed=args.seed, scale=args.scale)
    width = max(len(report.name) for report in reports)
    failed = False
    for report in reports:
        verdict = "PASS" if report.passed else "FAIL"
        print(f"{report.name:<{width}}  {verdict}")
        for line in report.lines:
            print(f"{'':<{width}}  - {line}")
        failed = failed or not report.passed
        if report.name == "partitions":
            if args.report_csv:
                Path(args.report_csv).write_text(report.details["csv"])
                print(f"{'':<{width}}  - audit table written to {args.report_csv}")
            if args.report_json:
                summary = {k: v for k, v in report.details.items() if k != "csv"}
                write_json(args.report_json, summary)
                print(f"{'':<{width}}  - audit summary written to {args.report_json}")
    return EXIT_INVARIANT if failed else EXIT_OK


def cmd_params(args: argparse.Namespace) -> int:
    p = args.order
    choice = select_parameters(p)
    model = success_model(p, choice.n_prime, choice.l)
    print(f"order p = {p}")
    print(f"n' = {choice.n_prime}, l = {choice.l}, C(3n'+l, l) = {choice.subsets}")
    print(f"central binomial Stirling estimate: {choice.stirling_estimate:.1f}")
    print(f"per-iteration success: {model.per_iteration:.4f}")
    print(
        "block-solver conditional estimate: "
        f"{model.alg2_conditional.numerator}/{model.alg2_conditional.denominator}"
        f" = {float(model.alg2_conditional):.4f}"
    )
    print(f"overall estimate 0.6*(ln p)^2/p = {model.overall_estimate_ln:.6f}")
    print(f"overall estimate 0.6*(log2 p)^2/p = {model.overall_estimate_log2:.6f}")
    return EXIT_OK


def cmd_find_curve(args: argparse.Namespace) -> int:
    field = PrimeField(args.q)
    group = find_prime_order_curve(field, args.order_min, args.order_max, args.max_candidates)
    print(f"curve: {curve_to_text(group.curve)}")
    print(f"generator: {point_to_text(group.generator)}")
    print(f"order: {group.order}")
    return EXIT_OK


def cmd_dlp(args: argparse.Namespace) -> int:
    settings = Settings(args)
    group = build_group(settings)
    target = build_target(settings, group)
    if args.method == "exhaustive":
        m = solve_exhaustive_dlp(group, target)
    else:
        m = solve_bsgs(group, target)
    print(f"m = {m}")
    return EXIT_OK


def _add_group_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, help="field size (prime)")
    parser.add_argument("--a", type=int, help="curve coefficient a")
    parser.add_argument("--b", type=int, help="curve coefficient b")
    parser.add_argument("--gx", type=int, help="generator x")
    parser.add_argument("--gy", type=int, help="generator y")
    parser.add_argument("--order", type=int, help="prime order of the generator")
    parser.add_argument("--config", help="flat key = value config file; flags override")


def _add_attack_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nprime", type=int, help="interpolating curve degree (default 1)")
    parser.add_argument("--l", type=int, help="extra rows / required zeros (default 3 * nprime)")
    parser.add_argument("--solver", choices=SOLVER_CHOICES, help="zero-pattern solver")
    parser.add_argument("--seed", type=int, help="run seed (default 0)")
    parser.add_argument("--enum-budget", dest="enum_budget", type=int, help="subset enumeration cap")
    parser.add_argument(
        "--accident-check",
        dest="accident_check",
        choices=("on", "off"),
        help="detect cross-block point collisions",
    )
    parser.add_argument("--timing", action="store_const", const="on", help="record wall-clock fields in output files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lvecdlp", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"lvecdlp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run the attack on one instance")
    _add_group_flags(solve)
    solve.add_argument("--qx", type=int, help="target x")
    solve.add_argument("--qy", type=int, help="target y")
    _add_attack_flags(solve)
    solve.add_argument("--max-iterations", dest="max_iterations", type=int)
    solve.add_argument("--manifest", help="manifest output path (default manifest.json)")
    solve.add_argument("--log", help="per-iteration JSON-lines log path")
    solve.set_defaults(func=cmd_solve)

    experiment = sub.add_parser("experiment", help="independent single-iteration trials")
    _add_group_flags(experiment)
    _add_attack_flags(experiment)
    experiment.add_argument("--trials", type=int, help="number of trials")
    experiment.add_argument("--m", type=int, help="fix the planted logarithm instead of sampling")
    experiment.add_argument("--csv", help="per-trial CSV path (default experiment.csv)")
    experiment.add_argument("--json", help="summary JSON path (default experiment.json)")
    experiment.set_defaults(func=cmd_experiment)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", required=True, choices=SUITE_NAMES + ("all",))
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--scale", type=float, default=1.0, help="trial-count multiplier for smoke runs")
    verify.add_argument("--report-csv", dest="report_csv", help="write the partition audit table here")
    verify.add_argument("--report-json", dest="report_json", help="write the partition audit summary here")
    verify.set_defaults(func=cmd_verify)

    params = sub.add_parser("params", help="suggest n' and l for a group order")
    params.add_argument("--order", type=int, required=True)
    params.set_defaults(func=cmd_params)

    find_curve = sub.add_parser("find-curve", help="scan for a prime-order fixture curve")
    find_curve.add_argument("--q", type=int, required=True)
    find_curve.add_argument("--order-min", dest="order_min", type=int, required=True)
    find_curve.add_argument("--order-max", dest="order_max", type=int, required=True)
    find_curve.add_argument("--max-candidates", dest="max_candidates", type=int)
    find_curve.set_defaults(func=cmd_find_curve)

    dlp = sub.add_parser("dlp", help="solve an instance with an independent oracle")
    _add_group_flags(dlp)
    dlp.add_argument("--qx", type=int, help="target x")
    dlp.add_argument("--qy", type=int, help="target y")
    dlp.add_argument("--method", choices=("bsgs", "exhaustive"), default="bsgs")
    dlp.set_defaults(func=cmd_dlp)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolationError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
