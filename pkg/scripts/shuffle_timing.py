"""Shuffle timing sweeps written to a results directory as CSV.

Three experiments, each one file:
  shuffle.csv   plain shuffles, every unbiased strategy plus the stdlib baseline
  buffered.csv  plain vs buffered nearly-divisionless shuffles
  float.csv     nearly-divisionless vs floating-point shuffles

    python3 scripts/shuffle_timing.py --out results --max-size 1048576
"""

import argparse
import pathlib
from dataclasses import dataclass

from boundedrand.bench import DEFAULT_BUFFER, MIN_REPEATS, STD_BASELINE, bench_shuffle, write_records
from boundedrand.word_source import DEFAULT_SEED


@dataclass(frozen=True)
class SweepConfig:
    out: pathlib.Path = pathlib.Path("results")
    min_size: int = 128
    max_size: int = 1 << 20
    repeats: int = MIN_REPEATS
    index_width: int = 64
    buffer: int = DEFAULT_BUFFER
    seed: int = DEFAULT_SEED

    @property
    def sizes(self):
        n, out = self.min_size, []
        while n <= self.max_size:
            out.append(n)
            n *= 2
        return out


def _write(path, records):
    with open(path, "w", newline="") as fh:
        write_records(records, fh)
    print(f"wrote {path}")


def run(cfg: SweepConfig) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    common = dict(sizes=cfg.sizes, index_width=cfg.index_width, repeats=cfg.repeats, seed=cfg.seed)
    _write(cfg.out / "shuffle.csv",
           bench_shuffle(strategies=["openbsd", "java", "lemire", STD_BASELINE], **common))

    def buffered():
        yield from bench_shuffle(strategies=["lemire"], **common)
        yield from bench_shuffle(strategies=["lemire"], buffer=cfg.buffer, experiment="buffered", **common)

    _write(cfg.out / "buffered.csv", buffered())
    _write(cfg.out / "float.csv",
           bench_shuffle(strategies=["lemire", "biased_float"], experiment="float", **common))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=pathlib.Path, default=SweepConfig.out)
    ap.add_argument("--max-size", type=int, default=SweepConfig.max_size)
    ap.add_argument("--repeats", type=int, default=MIN_REPEATS)
    ap.add_argument("--bits", type=int, choices=(32, 64), default=64)
    args = ap.parse_args()
    run(SweepConfig(out=args.out, max_size=args.max_size, repeats=args.repeats, index_width=args.bits))


if __name__ == "__main__":
    main()
