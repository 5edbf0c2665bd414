#!/usr/bin/env python3
"""Run every registered experiment with its default parameters.

    python scripts/run_all_experiments.py --out results --seed 1
    python scripts/run_all_experiments.py --out results --quick

--quick cuts trial counts for a fast sanity pass; the full defaults
reproduce the benchmark figures at desk scale.
"""
import argparse
import time

from isacbench.experiments import REGISTRY, run_experiment

QUICK_TRIALS = 16


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    for name in sorted(REGISTRY):
        trials = None
        if args.quick:
            trials = min(QUICK_TRIALS, REGISTRY[name].defaults["trials"])
        t0 = time.time()
        manifest = run_experiment(name, seed=args.seed, trials=trials,
                                  output_dir=f"{args.out}/{name}",
                                  workers=args.workers)
        outs = ", ".join(manifest["outputs"])
        print(f"{name:<22} {time.time() - t0:6.1f}s  -> {outs}")


if __name__ == "__main__":
    main()
