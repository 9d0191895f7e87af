"""
Command line interface.

    curtangent experiment {generic|invisible|normal|visibility} [options]
    curtangent verify --suite {projectors|calculus|bounds|all}
    curtangent example41

Exit codes: 0 success, 1 usage error, 2 runtime or verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .cur import cur_rank_truncated
from .dense import compact_svd, truncate_rank
from .errors import CurTangentError, InvalidInputError
from .experiment import ExperimentConfig, csv_text, log_grid, run_experiment, write_csv
from .plotting import Series, write_svg_loglog
from .sampling import SelectionPair
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser():
    parser = _Parser(prog="curtangent", description="Rank-truncated CUR perturbation experiments")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    exp = sub.add_parser("experiment", help="run a perturbation sweep and write CSV")
    exp.add_argument("family", choices=("generic", "invisible", "normal", "visibility"))
    exp.add_argument("--m", type=int, default=80)
    exp.add_argument("--n", type=int, default=70)
    exp.add_argument("--rank", type=int, default=5)
    exp.add_argument("--rows", type=int, default=None, help="sampled rows (default 2*rank)")
    exp.add_argument("--cols", type=int, default=None, help="sampled columns (default 2*rank)")
    exp.add_argument("--seed", type=int, default=0)
    exp.add_argument("--eps-min", type=float, default=1e-8)
    exp.add_argument("--eps-max", type=float, default=1e-1)
    exp.add_argument("--eps-per-decade", type=int, default=2)
    exp.add_argument("--alpha-min", type=float, default=1e-3)
    exp.add_argument("--alpha-max", type=float, default=1e1)
    exp.add_argument("--alpha-per-decade", type=int, default=5)
    exp.add_argument("--out", default=None, help="CSV path (default: standard output)")
    exp.add_argument("--svg", default=None, help="optional log-log SVG plot")

    ver = sub.add_parser("verify", help="run randomized property suites")
    ver.add_argument("--suite", choices=SUITES + ("all",), default="all")

    sub.add_parser("example41", help="print the 3x3 CUR-versus-SVD golden values")
    return parser


def _config(args):
    return ExperimentConfig(
        m=args.m,
        n=args.n,
        r=args.rank,
        s=args.rows,
        c=args.cols,
        seed=args.seed,
        eps_grid=log_grid(args.eps_min, args.eps_max, args.eps_per_decade),
        alpha_grid=log_grid(args.alpha_min, args.alpha_max, args.alpha_per_decade),
    )


def _plot_series(family, cfg):
    if family == "visibility":
        specs = []
        for eps in cfg.eps_fixed:
            specs.append(Series(f"CUR error, eps={eps:g}", "alpha", "err_cur", {"epsilon": eps}))
            specs.append(Series(f"prediction, eps={eps:g}", "alpha", "pred_cur", {"epsilon": eps}, dashed=True))
        return specs, "alpha", "recovery error"
    return (
        [
            Series("CUR error", "epsilon", "err_cur"),
            Series("CUR first order", "epsilon", "pred_cur", dashed=True),
            Series("SVD error", "epsilon", "err_svd"),
            Series("SVD first order", "epsilon", "pred_svd", dashed=True),
        ],
        "epsilon",
        "recovery error",
    )


def cmd_experiment(args):
    try:
        cfg = _config(args)
    except InvalidInputError as exc:
        print(f"curtangent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    records = run_experiment(cfg, args.family)
    if args.out:
        write_csv(records, args.out)
    else:
        sys.stdout.write(csv_text(records))
    flagged = sum(not rec.in_hypothesis for rec in records)
    if flagged:
        print(f"{flagged} record(s) lie outside the local perturbation regime", file=sys.stderr)
    if args.svg:
        specs, xlabel, ylabel = _plot_series(args.family, cfg)
        write_svg_loglog(records, specs, args.svg, f"{args.family} perturbation", xlabel, ylabel)
    return EXIT_OK


def cmd_verify(args):
    checks = run_suite(args.suite)
    for chk in checks:
        print(chk.line())
    failed = sum(not chk.passed for chk in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAILURE


def example41_values():
    """Golden quantities for ``M = ones(3,3)/3``, first row and column sampled, ``E = e3 e3^T``."""
    M = np.full((3, 3), 1.0 / 3.0)
    E = np.zeros((3, 3))
    E[2, 2] = 1.0
    sel = SelectionPair([0], [0], 3, 3)
    svd = compact_svd(M)
    cur_err = {eps: float(np.linalg.norm(cur_rank_truncated(M + eps * E, sel, 1) - M)) for eps in (1e-3, 2.0 / 3.0, 10.0)}
    A = M + (2.0 / 3.0) * E
    A1 = truncate_rank(A, 1)
    return {
        "sigma": float(svd.sigmas[0]),
        "u": svd.left[:, 0],
        "cur_errors": cur_err,
        "svd_truncation": A1,
        "svd_error": float(np.linalg.norm(A1 - M)),
        "svd_error_exact": math.sqrt(33.0) / 9.0,
    }


def cmd_example41(args):
    vals = example41_values()
    np.set_printoptions(precision=12, suppress=True)
    print("M = ones(3,3)/3, S = P = {row 0, col 0}, E = e3 e3^T")
    print(f"sigma_1(M) = {vals['sigma']!r}")
    print(f"u = {vals['u']}")
    for eps, err in vals["cur_errors"].items():
        print(f"||Phi_1(M + {eps:g} E) - M||_F = {err!r}")
    print("(M + 2/3 E)_1 =")
    print(vals["svd_truncation"])
    print(f"||(M + 2/3 E)_1 - M||_F = {vals['svd_error']!r}  (sqrt(33)/9 = {vals['svd_error_exact']!r})")
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    if args.command is None:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print("curtangent: error: a subcommand is required", file=sys.stderr)
        return EXIT_USAGE
    handlers = {"experiment": cmd_experiment, "verify": cmd_verify, "example41": cmd_example41}
    try:
        return handlers[args.command](args)
    except (CurTangentError, OSError) as exc:
        print(f"curtangent: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
