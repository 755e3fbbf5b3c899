"""Reproduce the two limit arguments at the command line: the Stirling table
showing (1/(q-1)) ln((q-1)!/(q-1)^(q-1)) -> -1, and the discretization of a
circle profile whose log mean converges to its log integral.

Usage:
    python3 scripts/limit_experiments.py --primes 11 101 1009 --riemann 5 11 101
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from groupcut import identity_fn, riemann_experiment, stirling_table


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--primes", type=int, nargs="+", default=[11, 101, 1009])
    parser.add_argument(
        "--riemann",
        type=int,
        nargs="+",
        default=[5, 11, 101],
        help="orders at which to discretize the identity profile",
    )
    parser.add_argument("--output-dir", default="out")
    args = parser.parse_args(argv)

    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    rows = stirling_table(args.primes)
    with open(out / "stirling_gaps.csv", "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["q", "log_mean", "gap_to_minus_one"])
        for row in rows:
            writer.writerow([row.q, row.log_mean, row.gap_to_minus_one])
    print("log mean of the exact floor, against its limit -1:")
    for row in rows:
        print(f"  q={row.q:>5}  log_mean={row.log_mean:+.6f}  gap={row.gap_to_minus_one:.6f}")

    print("discretized identity profile (log mean vs integral -1):")
    identity = identity_fn()
    for q in args.riemann:
        result = riemann_experiment(identity, q)
        print(
            f"  q={result.q:>5}  discrete_mean={result.discrete_mean:+.6f}  "
            f"floor={result.lower_bound:+.6f}  integral={result.integral:+.6f}"
        )
    print(f"wrote {out / 'stirling_gaps.csv'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
