"""Time the closed-form rotor map against direct step simulation.

Builds two-run ribbon instances whose multiplicities grow geometrically
and times pi_r with a full-turn routing vector at each size.  The closed
form touches each run once, so wall time should track the bit length of
the multiplicity, not its magnitude; the direct simulation is feasible
only at the smallest sizes and is used there as a cross-check.

    python3 scripts/succinct_timing.py
    python3 scripts/succinct_timing.py --max-exponent 60
"""

from __future__ import annotations

import argparse
import sys
import time

from rotorchip.rotorrouting import ChipRotorConfig, RibbonStructure, pi_r, route

SIMULATION_CUTOFF = 10 ** 6


def build(mult: int) -> tuple[RibbonStructure, ChipRotorConfig, tuple[int, int, int]]:
    ribbon = RibbonStructure(runs=(((1, mult), (2, 1)), ((0, 1),), ((0, 1),)))
    config = ChipRotorConfig((mult, 0, 0), (0, 0, 0))
    return ribbon, config, (mult, 0, 0)


def simulate(ribbon: RibbonStructure, config: ChipRotorConfig, r: tuple[int, ...]) -> ChipRotorConfig:
    cur = config
    for v, count in enumerate(r):
        for _ in range(count):
            cur = route(ribbon, cur, v)
    return cur


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-exponent", type=int, default=18)
    parser.add_argument("--repeats", type=int, default=100)
    args = parser.parse_args()

    print(f"{'multiplicity':>24} {'bits':>5} {'pi_r (us)':>10} {'checked':>8}")
    exponent = 0
    while exponent <= args.max_exponent:
        mult = 10 ** exponent if exponent else 4
        ribbon, config, r = build(mult)
        t0 = time.perf_counter()
        for _ in range(args.repeats):
            out = pi_r(ribbon, config, r)
        per_call = (time.perf_counter() - t0) / args.repeats * 1e6

        # One full pass over the first run and its boundary edge: the
        # rotor ends at position mult, chips split mult-1 / 1.
        expected_chips = (0, mult - 1, 1)
        expected_rotors = (mult, 0, 0)
        if out.chips != expected_chips or out.rotors != expected_rotors:
            print(f"closed form mismatch at multiplicity {mult}: {out}")
            return 1

        checked = "-"
        if mult <= SIMULATION_CUTOFF:
            if simulate(ribbon, config, r) != out:
                print(f"simulation mismatch at multiplicity {mult}")
                return 1
            checked = "sim"
        print(f"{mult:>24} {mult.bit_length():>5} {per_call:>10.2f} {checked:>8}")
        exponent += 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
