"""Shuffle timing harness producing :class:`BenchRecord` rows."""

from __future__ import annotations

import csv
import dataclasses
import random
import statistics
import time
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import kernels
from .bounded import Bound, Strategy, check_float_bound
from .word_source import DEFAULT_SEED, Lcg128

STD_BASELINE = "std-baseline"
MIN_REPEATS = 5
DEFAULT_BUFFER = 256
DEFAULT_SIZES = "128:16777216:2"


@dataclass
class BenchRecord:
    experiment: str
    strategy: str
    index_width: int
    array_size: int
    buffer_size: int | None
    ns_per_element: float
    words_per_element: float
    remainders_per_element: float
    ns_per_element_median: float


BENCH_COLUMNS = [f.name for f in dataclasses.fields(BenchRecord)]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_records(records: Iterable[BenchRecord], out: TextIO, header: bool = True) -> None:
    w = csv.writer(out, lineterminator="\n")
    if header:
        w.writerow(BENCH_COLUMNS)
    for r in records:
        w.writerow([_fmt(getattr(r, c)) for c in BENCH_COLUMNS])
        out.flush()


def parse_sizes(text: str) -> list[int]:
    """``min:max:factor`` -> [min, min*factor, ...] up to max inclusive."""
    try:
        lo, hi, factor = (int(p) for p in text.split(":"))
    except ValueError:
        raise ValueError(f"sizes must look like min:max:factor, got {text!r}") from None
    if lo < 1 or hi < lo or factor < 2:
        raise ValueError(f"need 1 <= min <= max and factor >= 2, got {text!r}")
    sizes = []
    n = lo
    while n <= hi:
        sizes.append(n)
        n *= factor
    return sizes


class LcgRandom(random.Random):
    """``random.Random`` whose bits come from :class:`Lcg128`, for the stdlib shuffle."""

    def __init__(self, gen: Lcg128):
        self._gen = gen
        self.words = 0
        super().__init__()

    def seed(self, *args, **kwargs):
        pass

    def random(self):
        self.words += 1
        return (self._gen.next_word() >> 11) * 2.0**-53

    def getrandbits(self, k):
        out = 0
        got = 0
        while got < k:
            self.words += 1
            out = (out << 64) | self._gen.next_word()
            got += 64
        return out >> (got - k)


def random_array(size: int, gen: Lcg128) -> np.ndarray:
    return kernels.lcg_outputs(gen, size).view(np.int64)


def _time_std(size: int, repeats: int, seed: int):
    gen = Lcg128(seed)
    items = random_array(size, gen).tolist()
    rng = LcgRandom(gen)
    rng.shuffle(items)
    rng.words = 0
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        rng.shuffle(items)
        times.append(time.perf_counter_ns() - t0)
    # stdlib rejection uses bit masks only, no runtime-divisor remainders
    return times, rng.words, 0


def _time_kernel(size, code, bits, buffer, repeats, seed):
    gen = Lcg128(seed)
    arr = random_array(size, gen)
    src = kernels.state_of(gen)

    def run(tally):
        if buffer is None:
            kernels.shuffle(arr, code, bits, src, tally)
        else:
            kernels.buffered_shuffle(arr, code, bits, buffer, src, tally)

    run(np.zeros(4, dtype=np.int64))  # warm-up, discarded
    tally = np.zeros(4, dtype=np.int64)
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        run(tally)
        times.append(time.perf_counter_ns() - t0)
    return times, int(tally[kernels.W_WORDS]), int(tally[kernels.W_REM])


def bench_shuffle(
    sizes: Sequence[int],
    strategies: Sequence[str],
    index_width: int = 64,
    repeats: int = MIN_REPEATS,
    buffer: int | None = None,
    seed: int = DEFAULT_SEED,
    experiment: str = "shuffle",
    float_precision: str | None = None,
) -> Iterable[BenchRecord]:
    """Time shuffles of random 64-bit integers, yielding one record per configuration.

    Every (size, strategy) run restarts the generator from ``seed``, so the
    tally columns are reproducible. With ``buffer`` set the buffered shuffle is
    timed instead of the plain one.
    """
    if repeats < MIN_REPEATS:
        raise ValueError(f"need at least {MIN_REPEATS} repeats, got {repeats}")
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be ascending")
    if index_width not in (32, 64):
        raise ValueError("benchmarks use 32- or 64-bit indexes")
    if float_precision is None:
        float_precision = "single" if index_width == 32 else "double"
    for name in strategies:
        if name != STD_BASELINE and Strategy(name) is Strategy.BIASED_FLOAT and sizes[-1] > 1:
            check_float_bound(Bound(sizes[-1], index_width), float_precision)
    # compile before anything is timed
    for name in strategies:
        if name != STD_BASELINE:
            _time_kernel(2, kernels.strategy_code(name, float_precision), index_width, buffer and 1, 1, seed)
    for size in sizes:
        for name in strategies:
            if name == STD_BASELINE:
                times, words, rems = _time_std(size, repeats, seed)
            else:
                code = kernels.strategy_code(name, float_precision)
                times, words, rems = _time_kernel(size, code, index_width, buffer, repeats, seed)
            per = [t / size for t in times]
            total = repeats * size
            yield BenchRecord(
                experiment=experiment,
                strategy=name,
                index_width=index_width,
                array_size=size,
                buffer_size=buffer,
                ns_per_element=statistics.fmean(per),
                words_per_element=words / total,
                remainders_per_element=rems / total,
                ns_per_element_median=statistics.median(per),
            )
