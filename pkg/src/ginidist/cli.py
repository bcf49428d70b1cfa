"""Command line interface: ``screen``, ``simulate``, and ``test``.

Exit codes: 0 on success, 2 on input errors (bad files, columns, or
flags), 3 when the requested statistics are infeasible on the data.
"""

from __future__ import annotations

import argparse
import json
import sys

from .estimators import STATISTICS
from .exceptions import (
    ClassTooSmallError,
    DegenerateDistributionError,
    DegenerateFeatureError,
    InfeasibleConfigurationError,
    InsufficientDataError,
    InvalidInputError,
)
from .inference import permutation_test
from .kernels import DEFAULT_SIGMA2, BoundedKernel, pairwise_distances
from .screening import ScreeningConfig, load_csv, run_screening, standardize
from .simgen import FAMILIES, PowerConfig, power_and_auc

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_INFEASIBLE = 3

_INPUT_ERRORS = (InvalidInputError, FileNotFoundError, OSError)
_INFEASIBLE_ERRORS = (
    InsufficientDataError,
    ClassTooSmallError,
    DegenerateDistributionError,
    DegenerateFeatureError,
    InfeasibleConfigurationError,
)


def _label_column(value: str):
    return int(value) if value.lstrip("-").isdigit() else value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ginidist",
        description="Feature-label dependence statistics, tests, and screening.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    screen = sub.add_parser("screen", help="rank CSV features by dependence on the label")
    screen.add_argument("--input", required=True, help="CSV file with a header row")
    screen.add_argument("--label", default="0", help="label column name or 0-based index")
    screen.add_argument(
        "--statistic",
        default="gcor",
        choices=("gcov", "gcor", "dcov", "dcor", "eta2"),
    )
    screen.add_argument("--sigma2", type=float, default=DEFAULT_SIGMA2)
    screen.add_argument(
        "--standardize", action=argparse.BooleanOptionalAction, default=True
    )
    screen.add_argument("--top-k", type=int, default=None)
    screen.add_argument("--permutations", type=int, default=0)
    screen.add_argument("--alpha", type=float, default=0.05)
    screen.add_argument("--seed", type=int, default=None)
    screen.add_argument("--sample-cap", type=int, default=None)
    screen.add_argument("--out-dir", default=".")
    screen.add_argument(
        "--drop-small-classes",
        action="store_true",
        help="drop classes with fewer than 2 rows instead of keeping them",
    )

    simulate = sub.add_parser("simulate", help="run a power/AUC simulation study")
    simulate.add_argument("--family", required=True, choices=FAMILIES)
    simulate.add_argument("--k", type=int, required=True, help="number of classes")
    simulate.add_argument("--n", type=int, default=100, help="sample size per dataset")
    simulate.add_argument("--m", type=int, default=10000, help="replicates per hypothesis")
    simulate.add_argument("--sigma2", type=float, default=DEFAULT_SIGMA2)
    simulate.add_argument("--alpha", type=float, default=0.05)
    simulate.add_argument("--seed", type=int, default=None)
    simulate.add_argument("--out", default=None, help="write report JSON here instead of stdout")

    test = sub.add_parser("test", help="permutation test of independence on a CSV file")
    test.add_argument("--input", required=True)
    test.add_argument("--label", default="0")
    test.add_argument(
        "--statistic", default="gcov", choices=("gcov", "gcor", "dcov", "dcor")
    )
    test.add_argument("--sigma2", type=float, default=DEFAULT_SIGMA2)
    test.add_argument("--standardize", action=argparse.BooleanOptionalAction, default=True)
    test.add_argument("--permutations", type=int, default=199)
    test.add_argument("--alpha", type=float, default=0.05)
    test.add_argument("--seed", type=int, default=None)
    return parser


def _cmd_screen(args) -> int:
    cfg = ScreeningConfig(
        input_path=args.input,
        label_column=_label_column(args.label),
        statistic=args.statistic,
        sigma2=args.sigma2,
        standardize=args.standardize,
        top_k=args.top_k,
        permutations=args.permutations,
        alpha=args.alpha,
        seed=args.seed,
        sample_cap=args.sample_cap,
        out_dir=args.out_dir,
        drop_small_classes=args.drop_small_classes,
    )
    report = run_screening(cfg)
    top = report["selected"][: min(5, len(report["selected"]))]
    print(f"wrote ranking.csv and report.json to {args.out_dir}; top features: {top}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    cfg = PowerConfig(
        family=args.family,
        k=args.k,
        n=args.n,
        m=args.m,
        kernel=BoundedKernel(sigma2=args.sigma2),
        alpha=args.alpha,
        seed=args.seed,
    )
    report = power_and_auc(cfg)
    payload = json.dumps(report.to_dict(), indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def _cmd_test(args) -> int:
    dataset, _, _ = load_csv(args.input, _label_column(args.label))
    if args.standardize:
        dataset = standardize(dataset)
    kernel = BoundedKernel(sigma2=args.sigma2)
    D = pairwise_distances(kernel, dataset.features)
    report = permutation_test(
        STATISTICS[args.statistic],
        D,
        dataset.labels,
        b=args.permutations,
        alpha=args.alpha,
        seed=args.seed,
        statistic_name=args.statistic,
    )
    sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"screen": _cmd_screen, "simulate": _cmd_simulate, "test": _cmd_test}[
        args.command
    ]
    try:
        return handler(args)
    except _INFEASIBLE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
