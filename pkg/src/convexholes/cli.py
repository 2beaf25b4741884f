"""Command-line interface for the experiment harness.

Subcommands: growth | shape | valtr | lower-bound | upper-trace |
prop1-fuzz | census.  Each has a built-in default configuration matching the
acceptance-scale runs; --config points at a JSON file with the same keys
(unknown keys rejected), and the remaining flags override individual fields.

Exit codes: 0 all configured assertions pass, 1 an assertion failed,
2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .harness import ConfigError, ExperimentConfig, run_experiment

_DEFAULTS = {
    "growth": dict(regions=["square"], n_values=[128, 256, 512, 1024], trials=50),
    "shape": dict(regions=["square", "disk", "triangle"], n_values=[512], trials=200),
    "valtr": dict(regions=["square", "triangle"], r_values=[3, 4, 5],
                  mc_trials=100000, trials=1),
    "lower_bound": dict(regions=["square"], n_values=[2000], strip_t=5, trials=500),
    "upper_trace": dict(regions=["square"], n_values=[2048], trials=200),
    "prop1_fuzz": dict(regions=["square"], n_values=[2000], fuzz_count=1000, trials=1),
    "census": dict(regions=["square"], n_values=[30], census_sizes=[3, 4, 5], trials=20),
}

_SUBCOMMANDS = {
    "growth": "growth",
    "shape": "shape",
    "valtr": "valtr",
    "lower-bound": "lower_bound",
    "upper-trace": "upper_trace",
    "prop1-fuzz": "prop1_fuzz",
    "census": "census",
}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="convexholes",
        description="Monte Carlo experiments on convex holes in random point sets.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMANDS:
        sp = sub.add_parser(name, help=f"run the {name} experiment")
        sp.add_argument("--config", help="JSON config file (unknown keys rejected)")
        sp.add_argument("--seed", type=int, help="master seed (u64)")
        sp.add_argument("--trials", type=int, help="trials per setting")
        sp.add_argument("--out", help="output CSV path (JSON summary sidecar beside it)")
        sp.add_argument("--workers", type=int, help="worker threads for trials")
        sp.add_argument("--n", help="comma-separated n values override")
    return p


def _config_from_args(args) -> ExperimentConfig:
    experiment = _SUBCOMMANDS[args.command]
    if args.config:
        cfg = ExperimentConfig.from_json(args.config)
        if cfg.experiment != experiment:
            raise ConfigError(
                f"config is for {cfg.experiment!r}, subcommand is {experiment!r}")
        base = cfg.to_echo()
    else:
        base = dict(_DEFAULTS[experiment])
        base["experiment"] = experiment
    if args.seed is not None:
        base["master_seed"] = args.seed
    if args.trials is not None:
        # --trials sets the experiment's natural repetition unit
        if experiment == "valtr":
            base["mc_trials"] = args.trials
        elif experiment == "prop1_fuzz":
            base["fuzz_count"] = args.trials
        else:
            base["trials"] = args.trials
    if args.workers is not None:
        base["worker_count"] = args.workers
    if args.n is not None:
        try:
            base["n_values"] = sorted(int(v) for v in args.n.split(",") if v)
        except ValueError as e:
            raise ConfigError(f"bad --n list: {args.n!r}") from e
    if args.out is not None:
        base["output_path"] = args.out
    base = {k: v for k, v in base.items() if v is not None}
    return ExperimentConfig.from_dict(base)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2

    result = run_experiment(cfg)
    if cfg.output_path:
        result.write(cfg.output_path)
        print(f"wrote {cfg.output_path} ({len(result.rows)} rows)")
    print(json.dumps({"experiment": result.experiment,
                      "assertions": {k: bool(v) for k, v in result.assertions.items()},
                      "ok": result.ok,
                      "elapsed_s": round(result.elapsed_s, 3)}, indent=2))
    return 0 if result.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
