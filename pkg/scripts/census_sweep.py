"""Sweep lattice censuses over a family of tower groups.

Prints one row per spec: slot count, census split, group order, and how long
the enumeration took.  Useful for eyeballing how the mixed family starts to
dominate as slots are added.

    python scripts/census_sweep.py --degrees 3 4 --max-T 4
"""

import argparse
import time
from dataclasses import dataclass
from itertools import combinations_with_replacement

from lattower.group_spec import format_spec, make_spec
from lattower.lattice_core import enumerate_lattice


@dataclass
class SweepConfig:
    degrees: tuple[int, ...]
    max_slots: int
    sort_by_size: bool


def parse_args() -> SweepConfig:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--degrees", type=int, nargs="+", default=[3, 4, 5])
    parser.add_argument("--max-T", dest="max_slots", type=int, default=4)
    parser.add_argument("--sort-by-size", action="store_true")
    args = parser.parse_args()
    return SweepConfig(tuple(sorted(set(args.degrees))), args.max_slots, args.sort_by_size)


def sweep(config: SweepConfig) -> list[tuple]:
    rows = []
    for t in range(1, config.max_slots + 1):
        for combo in combinations_with_replacement(config.degrees, t):
            exponents: dict[int, int] = {}
            for d in combo:
                exponents[d] = exponents.get(d, 0) + 1
            spec = make_spec(exponents)
            start = time.perf_counter()
            lat = enumerate_lattice(spec)
            elapsed = time.perf_counter() - start
            c = lat.census
            rows.append(
                (format_spec(spec), t, c.sub_products, c.sign_parity, c.mixed, c.total,
                 spec.group_order, elapsed)
            )
    return rows


def main() -> None:
    config = parse_args()
    rows = sweep(config)
    if config.sort_by_size:
        rows.sort(key=lambda r: r[5])
    header = f"{'spec':<14} {'T':>2} {'sub':>6} {'par':>5} {'mixed':>7} {'total':>7} {'|G|':>12} {'secs':>7}"
    print(header)
    print("-" * len(header))
    for spec, t, sub, par, mixed, total, order, secs in rows:
        print(f"{spec:<14} {t:>2} {sub:>6} {par:>5} {mixed:>7} {total:>7} {order:>12} {secs:>7.3f}")


if __name__ == "__main__":
    main()
