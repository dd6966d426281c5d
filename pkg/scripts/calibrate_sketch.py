"""Monte-Carlo sweep choosing (k_min, repetitions) for each failure budget.

A configuration qualifies for budget delta when its all-times factor-2 failure
rate over the calibration streams is at most delta / 2.  Calibration streams use
seeds disjoint from the acceptance suite's.
"""

import argparse
import json

from enumdelay.sketch import DistinctSketch, all_times_ok, random_stream

GRID = [(k, r) for r in (1, 3, 5) for k in (8, 12, 16, 24, 32, 48, 64)]


def failure_rate(k, r, trials, seed_base=1_000_000):
    fails = 0
    for i in range(trials):
        sk = DistinctSketch(k, r, seed=seed_base + i)
        if not all_times_ok(sk, random_stream(seed_base + i)):
            fails += 1
    return fails / trials


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=1000)
    args = ap.parse_args()
    rates = {}
    for k, r in GRID:
        rates[(k, r)] = failure_rate(k, r, args.trials)
        print(f"k={k:3d} r={r} failure={rates[(k, r)]:.4f}", flush=True)
    table = {}
    for delta in (0.25, 0.1, 0.05):
        ok = [(k * r, k, r) for (k, r), f in rates.items() if f <= delta / 2]
        _, k, r = min(ok)
        table[delta] = (k, r)
    print(json.dumps({str(d): v for d, v in table.items()}))


if __name__ == "__main__":
    main()
