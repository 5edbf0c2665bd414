"""isac-bench command line interface.

Subcommands:
    run CONFIG      execute an experiment described by a flat key=value file
    list            print the experiment registry
    describe NAME   print one experiment's description and default parameters

Exit codes: 0 success, 2 unknown experiment, 3 invalid config or parameters,
4 unwritable output directory.

The default output directory is `.` or the ISACBENCH_OUT environment
variable when set.
"""
from __future__ import annotations

import argparse
import os
import sys

from .experiments import REGISTRY, run_experiment

EXIT_OK = 0
EXIT_UNKNOWN_EXPERIMENT = 2
EXIT_BAD_CONFIG = 3
EXIT_BAD_OUTPUT = 4


def _coerce(text: str):
    """Typed value from a config token: bool, int, float, or string."""
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    return text


def parse_config(path: str) -> dict:
    """Flat `key = value` file; '#' starts a comment, commas make lists."""
    config = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not key or not value:
                raise ValueError(f"{path}:{lineno}: empty key or value")
            if "," in value:
                config[key] = [_coerce(v.strip()) for v in value.split(",") if v.strip()]
            else:
                config[key] = _coerce(value)
    return config


def _cmd_run(args) -> int:
    try:
        config = parse_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    name = config.pop("experiment", None)
    if name is None:
        print("error: config must set 'experiment'", file=sys.stderr)
        return EXIT_BAD_CONFIG
    if name not in REGISTRY:
        print(f"error: unknown experiment {name!r}", file=sys.stderr)
        return EXIT_UNKNOWN_EXPERIMENT
    seed = int(config.pop("seed", 0))
    trials = config.pop("trials", None)
    out = config.pop("output_dir", None)
    if args.seed is not None:
        seed = args.seed
    if args.trials is not None:
        trials = args.trials
    if args.out is not None:
        out = args.out
    if out is None:
        out = os.environ.get("ISACBENCH_OUT", ".")
    try:
        os.makedirs(out, exist_ok=True)
        probe = os.path.join(out, ".write_probe")
        with open(probe, "w"):
            pass
        os.remove(probe)
    except OSError as exc:
        print(f"error: output dir not writable: {exc}", file=sys.stderr)
        return EXIT_BAD_OUTPUT
    try:
        manifest = run_experiment(name, config, seed=seed,
                                  trials=None if trials is None else int(trials),
                                  output_dir=out, workers=args.workers)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    for fname in manifest["outputs"]:
        print(os.path.join(out, fname))
    return EXIT_OK


def _cmd_list(_args) -> int:
    width = max(len(name) for name in REGISTRY)
    for name in sorted(REGISTRY):
        exp = REGISTRY[name]
        print(f"{name:<{width}}  {exp.description}")
    return EXIT_OK


def _cmd_describe(args) -> int:
    if args.experiment not in REGISTRY:
        print(f"error: unknown experiment {args.experiment!r}", file=sys.stderr)
        return EXIT_UNKNOWN_EXPERIMENT
    exp = REGISTRY[args.experiment]
    print(exp.name)
    print(f"  {exp.description}")
    print("  defaults:")
    for key in sorted(exp.defaults):
        print(f"    {key} = {exp.defaults[key]}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="isac-bench",
                                     description="seeded ISAC waveform benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment from a config file")
    run_p.add_argument("config")
    run_p.add_argument("--seed", type=int, default=None)
    run_p.add_argument("--trials", type=int, default=None)
    run_p.add_argument("--out", default=None)
    run_p.add_argument("--workers", type=int, default=1)
    run_p.set_defaults(fn=_cmd_run)

    list_p = sub.add_parser("list", help="list experiments")
    list_p.set_defaults(fn=_cmd_list)

    desc_p = sub.add_parser("describe", help="show one experiment's defaults")
    desc_p.add_argument("experiment")
    desc_p.set_defaults(fn=_cmd_describe)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
