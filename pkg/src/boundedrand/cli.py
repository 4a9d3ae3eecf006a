"""Command-line entry point: ``boundedrand {bench-shuffle,bench-float,divcount,verify}``.

Exit status: 0 on success, 1 when a verification check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import contextlib
import random
import sys
from typing import Sequence

from . import oracle, stats
from .bench import (
    DEFAULT_BUFFER,
    DEFAULT_SIZES,
    MIN_REPEATS,
    STD_BASELINE,
    bench_shuffle,
    parse_sizes,
    write_records,
)
from .bounded import BIASED, UNBIASED, Bound, Strategy
from .shuffle import SampleSpec
from .word_source import DEFAULT_SEED, Lcg128, parse_seed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# L=16 bounds checked by default: edges, powers of two +-1, primes
SPOT_BOUNDS_16 = (1, 2, 3, 5, 7, 127, 128, 129, 255, 256, 257, 4093, 4096, 4097,
                  32749, 32767, 32768, 32769, 65521, 65534, 65535)
SPOT_RANDOM_COUNT = 100


class UsageError(Exception):
    pass


def _strategy_list(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    for n in names:
        if n != STD_BASELINE:
            try:
                Strategy(n)
            except ValueError:
                raise argparse.ArgumentTypeError(f"unknown strategy {n!r}") from None
    return names


def _seed(text: str) -> int:
    try:
        return parse_seed(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sizes(text: str) -> list[int]:
    try:
        return parse_sizes(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


@contextlib.contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def spot_bounds_16(seed: int = DEFAULT_SEED) -> list[int]:
    rng = random.Random(seed)
    extra = [rng.randrange(1, 1 << 16) for _ in range(SPOT_RANDOM_COUNT)]
    return sorted(set(SPOT_BOUNDS_16) | set(extra))


def cmd_bench_shuffle(args) -> int:
    buffers = [None] if args.buffer is None else [None, args.buffer]
    with _output(args.csv) as out:
        first = True
        for buf in buffers:
            records = bench_shuffle(
                args.sizes, args.strategy, args.bits, args.repeats, buf, args.seed,
                experiment="shuffle" if buf is None else "buffered",
            )
            write_records(records, out, header=first)
            first = False
    return EXIT_OK


def cmd_bench_float(args) -> int:
    precision = args.precision or ("single" if args.bits == 32 else "double")
    with _output(args.csv) as out:
        records = bench_shuffle(
            args.sizes, ["lemire", "biased_float"], args.bits, args.repeats, None,
            args.seed, experiment="float", float_precision=precision,
        )
        write_records(records, out)
    return EXIT_OK


def cmd_divcount(args) -> int:
    s_values = args.s if args.s else oracle.log_sweep(args.bits, args.per_octave)
    points = oracle.remainder_curve(args.bits, s_values)
    empirical = None
    if args.empirical:
        empirical = []
        for s in s_values:
            b = Bound(s, args.bits)
            empirical.append({
                st.value: oracle.empirical_tally(st, b, args.empirical, Lcg128(args.seed)).mean_remainders
                for st in UNBIASED
            })
    with _output(args.csv) as out:
        oracle.write_curve_csv(points, out, empirical)
    return EXIT_OK


def _verify_exhaustive(bits: int, all_bounds: bool, seed: int, report) -> bool:
    if bits == 8 or all_bounds:
        bounds = range(1, 1 << bits)
    else:
        bounds = spot_bounds_16(seed)
    ok = True
    flat = 0
    for s in bounds:
        b = Bound(s, bits)
        tables = {st: oracle.exhaustive_distribution(st, b) for st in UNBIASED}
        for st, t in tables.items():
            good = t.matches_uniform_law()
            flat += good
            ok &= good
            print(f"{'ok  ' if good else 'FAIL'} exhaustive bits={bits} strategy={st.value} s={s} "
                  f"per_output={t.counts[0]} rejected={t.rejected}", file=report)
        if len({t.counts for t in tables.values()}) != 1:
            ok = False
            print(f"FAIL exhaustive bits={bits} s={s} unbiased tables disagree", file=report)
        for st in BIASED:
            if st is Strategy.BIASED_FLOAT and s > 1 << 24:
                continue
            t = oracle.exhaustive_distribution(st, b)
            label = "flat" if t.is_flat else f"biased min={min(t.counts)} max={max(t.counts)}"
            print(f"info exhaustive bits={bits} strategy={st.value} s={s} {label}", file=report)
    print(f"summary: {flat}/{len(bounds) * len(UNBIASED)} unbiased tables flat "
          f"({len(bounds)} bounds x {len(UNBIASED)} strategies)", file=report)
    return ok


def _verify_statistical(bits: int, seed: int, alpha: float, report) -> bool:
    ok = True

    def line(good, text):
        nonlocal ok
        ok &= good
        print(f"{'ok  ' if good else 'FAIL'} {text}", file=report)

    for st in UNBIASED:
        r = stats.permutation_frequency_test(4, 240_000, st, Lcg128(seed), index_width=bits)
        line(r.passes(alpha), f"permutations bits={bits} strategy={st.value} n=4 N=240000 "
                              f"chi2={r.statistic:.3f} p={r.p_value:.4g}")
        r = stats.sample_set_frequency_test(SampleSpec(5, 2), 100_000, st, Lcg128(seed), index_width=bits)
        line(r.passes(alpha), f"reservoir bits={bits} strategy={st.value} n=5 k=2 N=100000 "
                              f"chi2={r.statistic:.3f} p={r.p_value:.4g}")
    top = 1 << bits
    draws = 1_000_000
    for s in (3, 6, top // 2, top - 1):
        b = Bound(s, bits)
        for st in UNBIASED:
            e = oracle.empirical_tally(st, b, draws, Lcg128(seed))
            want = float(oracle.expected_remainders(st, b))
            se = oracle.remainder_std_error(st, b, draws)
            line(abs(e.mean_remainders - want) <= 5 * se,
                 f"remainders bits={bits} strategy={st.value} s={s} mean={e.mean_remainders!r} "
                 f"expected={want!r}")
            want_w = float(1 / oracle.acceptance_probability(b))
            se_w = oracle.words_std_error(b, draws)
            line(abs(e.mean_words - want_w) <= 5 * se_w,
                 f"words bits={bits} strategy={st.value} s={s} mean={e.mean_words!r} expected={want_w!r}")
    return ok


def cmd_verify(args) -> int:
    if args.seed == 0:
        raise UsageError("seed 0 is a fixed point of the generator; pick a nonzero (ideally odd) seed")
    if args.mode == "exhaustive":
        if args.bits > oracle.MAX_EXHAUSTIVE_BITS:
            raise UsageError(
                f"exhaustive verification refused for --bits {args.bits}: "
                f"2**{args.bits} inputs per bound (cost guard, use 8 or 16)"
            )
        ok = _verify_exhaustive(args.bits, args.all_bounds, args.seed, sys.stdout)
    else:
        ok = _verify_statistical(args.bits, args.seed, args.alpha, sys.stdout)
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boundedrand", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, bits_default, csv=True):
        sp.add_argument("--bits", type=int, choices=(8, 16, 32, 64), default=bits_default)
        sp.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                        help="128-bit LCG seed, decimal or 0x-hex")
        if csv:
            sp.add_argument("--csv", default="-", help="output path, '-' for stdout")

    sp = sub.add_parser("bench-shuffle", help="time Fisher-Yates shuffles per strategy")
    common(sp, 64)
    sp.add_argument("--strategy", type=_strategy_list, default=_strategy_list("openbsd,java,lemire"),
                    help=f"comma list of strategies, may include {STD_BASELINE}")
    sp.add_argument("--sizes", type=_sizes, default=parse_sizes(DEFAULT_SIZES))
    sp.add_argument("--repeats", type=int, default=MIN_REPEATS)
    sp.add_argument("--buffer", type=int, nargs="?", const=DEFAULT_BUFFER, default=None,
                    help=f"also time the buffered shuffle (default B={DEFAULT_BUFFER})")
    sp.set_defaults(func=cmd_bench_shuffle)

    sp = sub.add_parser("bench-float", help="nearly-divisionless vs floating-point shuffles")
    common(sp, 64)
    sp.add_argument("--sizes", type=_sizes, default=parse_sizes(DEFAULT_SIZES))
    sp.add_argument("--repeats", type=int, default=MIN_REPEATS)
    sp.add_argument("--precision", choices=("single", "double"), default=None,
                    help="float format (default: single for 32 bits, double for 64)")
    sp.set_defaults(func=cmd_bench_float)

    sp = sub.add_parser("divcount", help="expected remainder computations per draw")
    common(sp, 32)
    sp.add_argument("--s", type=int, nargs="+", help="explicit bounds instead of a log sweep")
    sp.add_argument("--per-octave", type=int, default=4)
    sp.add_argument("--empirical", type=int, default=0, metavar="N",
                    help="add measured columns from N draws per bound")
    sp.set_defaults(func=cmd_divcount)

    sp = sub.add_parser("verify", help="exhaustive or statistical correctness checks")
    common(sp, 8, csv=False)
    sp.add_argument("--mode", choices=("exhaustive", "statistical"), default="exhaustive")
    sp.add_argument("--all-bounds", action="store_true", help="at 16 bits, sweep every s")
    sp.add_argument("--alpha", type=float, default=0.001)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "repeats", MIN_REPEATS) < MIN_REPEATS:
        parser.error(f"--repeats must be at least {MIN_REPEATS}")
    if getattr(args, "buffer", None) is not None and args.buffer < 1:
        parser.error("--buffer must be >= 1")
    if getattr(args, "bits", None) is not None and args.command.startswith("bench") and args.bits not in (32, 64):
        parser.error("benchmarks take --bits 32 or 64")
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"boundedrand: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryError:
        print("boundedrand: error: out of memory allocating the benchmark array", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
