"""Run the oracle validation sweeps from the command line.

Each sweep replays a seeded stream of desk-scale instances and compares a
decision procedure against an independent brute-force oracle (or an
internal consistency property).  Exit status is nonzero when any sweep
records a failure, so this doubles as a CI gate.

    python3 scripts/oracle_sweep.py --sweep all --count 2000 --seed 7
    python3 scripts/oracle_sweep.py --sweep rotor-reach --count 10000
"""

from __future__ import annotations

import argparse
import sys

from rotorchip.sweeps import SWEEPS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--sweep",
        default="all",
        choices=["all", *SWEEPS],
        help="which sweep to run (default: all)",
    )
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--max-failures",
        type=int,
        default=5,
        help="failure examples to print per sweep",
    )
    args = parser.parse_args()

    names = list(SWEEPS) if args.sweep == "all" else [args.sweep]
    bad = 0
    for name in names:
        report = SWEEPS[name](count=args.count, seed=args.seed)
        print(report.summary())
        for detail in report.failures[: args.max_failures]:
            print(f"  failure={detail}")
        if not report.ok:
            bad += 1
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
