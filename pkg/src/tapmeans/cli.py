"""Command line interface.

Each subcommand runs one experiment driver, prints its console summary,
and optionally writes a CSV/JSON table or a log-log plot.  Exit status:
0 when the run's verdict passes, 1 when it fails, 2 on invalid
configuration.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .experiments import (
    ConfigError,
    ExperimentConfig,
    VerdictError,
    plot_report,
    run_comparison_experiment,
    run_direct_experiment,
    run_identity_suite,
    run_inverse_experiment,
    run_kfun_experiment,
    run_moduli_check,
    run_saturation_experiment,
    write_report,
)

_RUNNERS = {
    "identities": run_identity_suite,
    "direct": run_direct_experiment,
    "inverse": run_inverse_experiment,
    "saturation": run_saturation_experiment,
    "compare": run_comparison_experiment,
    "kfun": run_kfun_experiment,
    "moduli-check": run_moduli_check,
}

# sensible demo configs used when no --config file is given
_DEFAULTS = {
    "identities": {"function": "all"},
    "direct": {
        "function": "smoothed:m=1,base=weierstrass:alpha=0.5,J=10",
        "r": 2, "n": 1,
    },
    "inverse": {
        "function": "smoothed:m=1,base=weierstrass:alpha=0.5,J=10",
        "r": 2, "n": 1,
        "omega": {"kind": "power", "alpha": 0.5},
    },
    "saturation": {"function": "geometric:q=0.5", "r": 2},
    "compare": {"function": "geometric:q=0.5", "r": 2},
    "kfun": {"function": "trigpoly:cos=4", "n": 1},
    "moduli-check": {"omega": {"kind": "power", "alpha": 0.5}, "n": 1},
}

_PLOTLESS = {"identities", "moduli-check"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tapmeans",
        description="Smoothing means on the circle: identity checks, "
        "approximation-rate experiments, K-functional brackets, and "
        "modulus condition tests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "identities": "run the structural identity suite",
        "direct": "smoothing error against the modulus envelope",
        "inverse": "rate-implies-boundedness consequences (gated on tail condition)",
        "saturation": "fitted decay exponent vs the saturation order",
        "compare": "boundary Taylor vs semigroup transform rates",
        "kfun": "K-functional brackets over delta = 1 - rho",
        "moduli-check": "integral/growth conditions for a modulus",
    }
    for name, runner in _RUNNERS.items():
        cmd = sub.add_parser(name, help=helps[name])
        cmd.add_argument("--config", metavar="PATH", help="JSON experiment config")
        cmd.add_argument("--out", metavar="PATH", help="write the result table here")
        cmd.add_argument(
            "--format", choices=("csv", "json"), default="csv",
            help="output format for --out (default csv)",
        )
        if name not in _PLOTLESS:
            cmd.add_argument("--plot", metavar="PATH", help="write a log-log plot (svg/png)")
        cmd.add_argument("--seed", type=int, help="override the config seed")
        cmd.add_argument("--jobs", type=int, help="parallel workers for the rho grid")
        cmd.set_defaults(runner=runner)
    return parser


def _load_config(args) -> ExperimentConfig:
    if args.config:
        config = ExperimentConfig.from_json_file(args.config)
    else:
        config = ExperimentConfig.from_dict(_DEFAULTS[args.command])
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if overrides:
        config = dataclasses.replace(config, **overrides)
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        report = args.runner(config)
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    except VerdictError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1

    for line in report.summary_lines():
        print(line)
    try:
        if args.out:
            write_report(report, args.out, fmt=args.format)
            print(f"wrote {args.format} table to {args.out}")
        if getattr(args, "plot", None):
            plot_report(report, args.plot)
            print(f"wrote plot to {args.plot}")
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
