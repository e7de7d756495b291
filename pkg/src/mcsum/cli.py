"""Command-line front end.

Subcommands: ``analyze`` (full report), ``verify`` (identity residual
table), ``scan`` (random-ensemble ordering scan), ``closed-form``
(two/three-state parameter formulas with a pipeline cross-check).

Exit codes: 0 success, 1 usage, 2 validation failure, 3 numerical failure,
4 identity violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import fixtures, io, oracle
from .analysis import (
    bounds_check,
    identity_residuals,
    mfpt_from_h,
    solve_chain,
    stationary_from_h,
)
from .chain import validate
from .errors import NUMERICAL_ERRORS, VALIDATION_ERRORS
from .ginv import theorem2_residuals
from .report import analyze, ordering_to_dict, report_to_dict
from .scan import ScanConfig, scan as run_scan

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_IDENTITY = 4

DEFAULT_VERIFY_TOL = 1e-8


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    return int(os.environ.get("MCSUM_SEED", "0"))


def _parse_states(expr: str) -> tuple[int, ...]:
    """State-count expression: '3', '3..8', or comma-separated items thereof."""
    out: list[int] = []
    for item in expr.split(","):
        item = item.strip()
        if ".." in item:
            lo, hi = item.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(item))
    if not out:
        raise ValueError(f"empty state-count expression {expr!r}")
    return tuple(out)


def _load_chain(args):
    p, labels = io.load_matrix(args.input, args.format)
    return validate(p, labels)


def _print_vector_table(labels, columns: dict[str, np.ndarray]) -> None:
    header = f"{'state':>8}" + "".join(f"{name:>16}" for name in columns)
    print(header)
    for i, label in enumerate(labels):
        row = f"{label:>8}" + "".join(f"{v[i]:>16.6f}" for v in columns.values())
        print(row)


def _cmd_analyze(args) -> int:
    tm = _load_chain(args)
    rep = analyze(tm, reorder=args.reorder_by_colsum)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(report_to_dict(rep), fh, indent=2)
            fh.write("\n")
    if rep.permutation is not None:
        print("state order:", " ".join(rep.labels))
    _print_vector_table(
        rep.labels, {"colsum": rep.column_sums, "stationary": rep.stationary}
    )
    print(f"kemeny constant: {rep.kemeny:.6f} (variant spread {rep.kemeny_spread:.3e})")
    b = rep.bounds
    print(f"kemeny margin over (m+1)/2:    {b.kemeny_margin:.6f}")
    print(f"trace(H) margin over lower:    {b.trace_h_margin:.6f}")
    print(f"min per-state margin m*h_jj-pi: {b.pi_upper_margins.min():.6f}")
    if rep.doubly_stochastic.applicable:
        print("column sums are all one: uniform-stationary checks applied")
    flagged = {
        name: pairs for name, pairs in rep.ordering.violations.items() if pairs
    }
    if flagged:
        for name, pairs in flagged.items():
            shown = ", ".join(f"({i + 1},{j + 1})" for i, j in pairs)
            print(f"ordering violation [{name}]: pairs {shown}")
    else:
        print("no ordering violations among the tracked relations")
    if rep.condition_warning:
        print(
            f"warning: condition estimate {rep.condition_estimate:.3e} is large; "
            "results may lose accuracy"
        )
    return EXIT_OK


def _verify_rows(tm) -> list[tuple[str, float]]:
    sol = solve_chain(tm)
    rows: list[tuple[str, float]] = [
        ("c^T H = pi^T", float(np.abs(stationary_from_h(sol.hc) - sol.pi).max())),
        ("sum_j c_j = m", float(abs(sol.c.sum() - tm.n))),
    ]
    rows.extend(theorem2_residuals(tm, sol.hc, sol.pi, sol.zf).items())
    rows.extend(
        identity_residuals(tm, sol.hc, sol.zf, sol.pi, sol.mfpt, sol.c).items()
    )
    mfpt_oracle = oracle.mfpt_direct(tm, sol.pi)
    rel = np.abs(sol.mfpt - mfpt_oracle) / np.maximum(np.abs(mfpt_oracle), 1.0)
    rows.append(("M from H = M from elimination (relative)", float(rel.max())))
    b = bounds_check(sol.hc, sol.pi, sol.mfpt)
    worst_margin = min(
        b.kemeny_margin,
        b.trace_h_margin,
        b.trace_h_weak_margin,
        float(b.pi_upper_margins.min()),
        float(b.pi_lower_offdiag_margins.min()),
        float(b.pi_lower_colsum_margins.min()),
    )
    rows.append(("inequality margins (negative part)", float(max(0.0, -worst_margin))))
    return rows


def _cmd_verify(args) -> int:
    tm = _load_chain(args)
    rows = [(name, value, args.tol_identity) for name, value in _verify_rows(tm)]
    reference = fixtures.reference_values(tm)
    if reference is not None:
        sol = solve_chain(tm)
        rows.append(
            (
                "published stationary vector",
                float(np.abs(sol.pi - np.array(reference["stationary"])).max()),
                args.tol_fixture,
            )
        )
        rows.append(
            (
                "published kemeny constant",
                abs(float(sol.zf.z.trace()) - reference["kemeny"]),
                10 * args.tol_fixture,
            )
        )
    width = max(len(name) for name, _, _ in rows)
    failed = False
    for name, value, tol in rows:
        ok = value <= tol
        failed |= not ok
        print(f"{name:<{width}}  {value:>12.3e}  {'pass' if ok else 'FAIL'}")
    if failed:
        print("residuals exceeded tolerance", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def _cmd_scan(args) -> int:
    config = ScanConfig(
        state_counts=_parse_states(args.states),
        trials=args.trials,
        seed=args.seed,
        sparsity=args.sparsity,
    )
    result = run_scan(config)
    print(f"{'relation':<24}{'m':>4}{'trials':>10}{'violations':>12}{'rate':>10}")
    for s in result.summaries:
        print(
            f"{s.relation:<24}{s.m:>4}{s.trials:>10}{s.violating_trials:>12}"
            f"{s.rate:>10.4f}"
        )
    print(f"counterexamples: {len(result.counterexamples)}")
    if args.log:
        with open(args.log, "w") as fh:
            for ce in result.counterexamples:
                entry = {
                    "m": ce.m,
                    "trial": ce.trial,
                    "seed": ce.seed,
                    "p": [[float(x) for x in row] for row in ce.p],
                    "ordering": ordering_to_dict(ce.record),
                }
                fh.write(json.dumps(entry, separators=(",", ":")) + "\n")
    if result.hard_failures:
        for line in result.hard_failures:
            print(f"HARD FAILURE: {line}", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def _print_matrix(name: str, a: np.ndarray) -> None:
    print(f"{name}:")
    for row in a:
        print("  " + "  ".join(f"{x:>12.6f}" for x in row))


def _closed_form_crosscheck(p, closed) -> float:
    tm = validate(p)
    sol = solve_chain(tm)
    mfpt = mfpt_from_h(sol.hc, sol.pi)
    return max(
        float(np.abs(sol.pi - closed.pi).max()),
        float(np.abs(sol.hc.h - closed.h).max()),
        float(np.abs(sol.zf.z - closed.z).max()),
        float(np.abs(mfpt - closed.mfpt).max()),
        abs(float(sol.zf.z.trace()) - closed.kemeny),
    )


def _cmd_closed_form_two(args) -> int:
    form = oracle.two_state_closed_form(args.a, args.b)
    print(f"parameters: a={args.a!r} b={args.b!r} (d = {form.d!r})")
    print("stationary:", " ".join(f"{x:.6f}" for x in form.pi))
    _print_matrix("M", form.mfpt)
    _print_matrix("H", form.h)
    _print_matrix("Z", form.z)
    print(f"kemeny constant: {form.kemeny:.6f}")
    p = np.array([[1.0 - args.a, args.a], [args.b, 1.0 - args.b]])
    deviation = _closed_form_crosscheck(p, form)
    print(f"max deviation from pipeline: {deviation:.3e}")
    return EXIT_OK


def _cmd_closed_form_three(args) -> int:
    form = oracle.three_state_closed_form(
        args.p2, args.p3, args.q1, args.q3, args.r1, args.r2
    )
    print(
        f"parameters: p2={args.p2!r} p3={args.p3!r} q1={args.q1!r} "
        f"q3={args.q3!r} r1={args.r1!r} r2={args.r2!r}"
    )
    print(
        "subdeterminants:",
        f"{form.delta1!r} {form.delta2!r} {form.delta3!r} (total {form.delta!r})",
    )
    print("stationary:", " ".join(f"{x:.6f}" for x in form.pi))
    _print_matrix("M", form.mfpt)
    _print_matrix("H", form.h)
    _print_matrix("Z", form.z)
    print(f"kemeny constant: {form.kemeny:.6f}")
    deviation = _closed_form_crosscheck(form.p, form)
    print(f"max deviation from pipeline: {deviation:.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mcsum",
        description=(
            "Analyze finite irreducible Markov chains through the column-sum "
            "generalized inverse (I - P + e c^T)^{-1}."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_opts(p):
        p.add_argument("--input", required=True, help="matrix file (CSV or JSON)")
        p.add_argument(
            "--format",
            choices=("csv", "json"),
            default=None,
            help="override the format inferred from the extension",
        )

    p_an = sub.add_parser("analyze", help="full chain report")
    add_input_opts(p_an)
    p_an.add_argument(
        "--reorder-by-colsum",
        action="store_true",
        help="permute states into descending column-sum order first",
    )
    p_an.add_argument("--output", help="write the JSON report here")
    p_an.set_defaults(func=_cmd_analyze)

    p_ver = sub.add_parser("verify", help="print the identity residual table")
    add_input_opts(p_ver)
    p_ver.add_argument(
        "--tol-identity",
        type=float,
        default=DEFAULT_VERIFY_TOL,
        help="maximum acceptable residual (default 1e-8)",
    )
    p_ver.add_argument(
        "--tol-fixture",
        type=float,
        default=5e-4,
        help=(
            "tolerance against published rounded values, applied when the "
            "input matches a bundled reference chain (default 5e-4)"
        ),
    )
    p_ver.set_defaults(func=_cmd_verify)

    p_scan = sub.add_parser("scan", help="random-ensemble ordering scan")
    p_scan.add_argument(
        "--states", required=True, help="state counts, e.g. '3', '3..8', '2,4,6'"
    )
    p_scan.add_argument("--trials", type=int, default=1000, help="trials per state count")
    p_scan.add_argument(
        "--seed",
        type=int,
        default=_default_seed(),
        help="master seed (default: MCSUM_SEED env var, else 0)",
    )
    p_scan.add_argument(
        "--sparsity", type=float, default=0.0, help="expected zero fraction in [0, 0.8]"
    )
    p_scan.add_argument("--log", help="write the counterexample log (JSON lines) here")
    p_scan.set_defaults(func=_cmd_scan)

    p_cf = sub.add_parser("closed-form", help="evaluate the small-chain closed forms")
    cf_sub = p_cf.add_subparsers(dest="form", required=True)

    p_two = cf_sub.add_parser("two-state", help="chain [[1-a, a], [b, 1-b]]")
    p_two.add_argument("--a", type=float, required=True)
    p_two.add_argument("--b", type=float, required=True)
    p_two.set_defaults(func=_cmd_closed_form_two)

    p_three = cf_sub.add_parser("three-state", help="six-parameter three-state chain")
    for name in ("p2", "p3", "q1", "q3", "r1", "r2"):
        p_three.add_argument(f"--{name}", type=float, required=True)
    p_three.set_defaults(func=_cmd_closed_form_three)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except VALIDATION_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NUMERICAL_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
