"""Expected vs measured remainder computations and words per draw.

Runs each unbiased strategy on a grid of (bits, s) and prints the model
value next to the measured mean, with the 5-sigma band.

    python3 scripts/remainder_table.py --draws 1000000
"""

import argparse
from dataclasses import dataclass

from boundedrand.bounded import UNBIASED, Bound, acceptance_probability, expected_remainders
from boundedrand.oracle import empirical_tally, remainder_std_error
from boundedrand.word_source import DEFAULT_SEED, Lcg128, parse_seed


@dataclass(frozen=True)
class TableConfig:
    draws: int = 10**6
    widths: tuple = (8, 32)
    seed: int = DEFAULT_SEED

    def grid(self):
        for bits in self.widths:
            for s in (3, 6, 1 << (bits - 1), (1 << bits) - 1):
                yield Bound(s, bits)


def run(cfg: TableConfig) -> None:
    print(f"{'strategy':8s} {'L':>2s} {'s':>10s} {'E[rem]':>12s} {'measured':>12s} "
          f"{'5 sd':>9s} {'1/p':>9s} {'words':>9s}")
    for b in cfg.grid():
        for st in UNBIASED:
            e = empirical_tally(st, b, cfg.draws, Lcg128(cfg.seed))
            want = float(expected_remainders(st, b))
            band = 5 * remainder_std_error(st, b, cfg.draws)
            print(f"{st.value:8s} {b.bits:2d} {b.s:10d} {want:12.9f} {e.mean_remainders:12.9f} "
                  f"{band:9.2e} {1 / float(acceptance_probability(b)):9.6f} {e.mean_words:9.6f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=TableConfig.draws)
    ap.add_argument("--seed", type=parse_seed, default=DEFAULT_SEED)
    args = ap.parse_args()
    run(TableConfig(draws=args.draws, seed=args.seed))


if __name__ == "__main__":
    main()
