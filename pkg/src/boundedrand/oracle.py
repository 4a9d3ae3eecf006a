"""Exhaustive and analytic checks of the bounded strategies.

``exhaustive_distribution`` feeds every L-bit word to a strategy as its only
word and records whether it is accepted and what it maps to. The unbiased
strategies must map exactly floor(2**L / s) words to each output and reject
2**L mod s words.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import kernels
from .bounded import (
    Bound,
    RejectionLimitExceeded,
    Strategy,
    acceptance_probability,
    check_float_bound,
    draw,
    expected_remainders,
)
from .word_source import Lcg128, ScriptedSource, WordSource

MAX_EXHAUSTIVE_BITS = 16


@dataclass(frozen=True)
class DistributionTable:
    strategy: Strategy
    bound: Bound
    counts: tuple[int, ...]
    rejected: int

    @property
    def is_flat(self) -> bool:
        return len(set(self.counts)) == 1

    def matches_uniform_law(self) -> bool:
        """Every output hit floor(2**L/s) times and 2**L mod s words rejected."""
        per = self.bound.modulus // self.bound.s
        return self.rejected == self.bound.threshold and all(c == per for c in self.counts)


@dataclass(frozen=True)
class RemainderCurvePoint:
    s: int
    openbsd: float
    java: float
    lemire: float


@dataclass(frozen=True)
class EmpiricalTally:
    draws: int
    mean_remainders: float
    mean_words: float
    min_remainders: int
    max_remainders: int
    max_words: int


def exhaustive_distribution(
    strategy: Strategy | str,
    bound: Bound,
    *,
    precision: str = "double",
    backend: str = "compiled",
) -> DistributionTable:
    """First-word distribution of ``strategy`` over all 2**L inputs.

    ``backend="reference"`` runs the pure-Python drawing functions on one-word
    scripts; ``"compiled"`` runs the numba twins.
    """
    strategy = Strategy(strategy)
    if bound.bits > MAX_EXHAUSTIVE_BITS:
        raise ValueError(
            f"exhaustive enumeration refused for {bound.bits}-bit words "
            f"(at most {MAX_EXHAUSTIVE_BITS})"
        )
    if strategy is Strategy.BIASED_FLOAT:
        check_float_bound(bound, precision)
    if backend == "compiled":
        counts = np.zeros(bound.s, dtype=np.int64)
        code = kernels.strategy_code(strategy, precision)
        rejected = kernels.first_word_table(code, np.uint64(bound.s), bound.bits, counts)
        return DistributionTable(strategy, bound, tuple(int(c) for c in counts), int(rejected))
    if backend != "reference":
        raise ValueError(f"unknown backend {backend!r}")
    kwargs = {"precision": precision} if strategy is Strategy.BIASED_FLOAT else {"max_words": 1}
    counts = [0] * bound.s
    rejected = 0
    for x in range(bound.modulus):
        try:
            y = draw(strategy, ScriptedSource([x], bound.bits), bound, **kwargs).value
        except RejectionLimitExceeded:
            rejected += 1
        else:
            counts[y] += 1
    return DistributionTable(strategy, bound, tuple(counts), rejected)


def remainder_curve(bits: int, s_values: Iterable[int]) -> list[RemainderCurvePoint]:
    points = []
    for s in s_values:
        b = Bound(s, bits)
        points.append(
            RemainderCurvePoint(
                s,
                float(expected_remainders(Strategy.OPENBSD, b)),
                float(expected_remainders(Strategy.JAVA, b)),
                float(expected_remainders(Strategy.LEMIRE, b)),
            )
        )
    return points


def log_sweep(bits: int, per_octave: int = 4) -> list[int]:
    """Roughly geometric sweep of s over [1, 2**L), plus the edges."""
    top = (1 << bits) - 1
    values = {1, top, 1 << (bits - 1)}
    for k in range(bits * per_octave):
        values.add(min(max(1, round(2 ** (k / per_octave))), top))
    return sorted(values)


def empirical_tally(
    strategy: Strategy | str,
    bound: Bound,
    draws: int,
    source: WordSource,
    *,
    precision: str = "double",
) -> EmpiricalTally:
    """Per-draw averages of words and remainders over ``draws`` draws.

    An :class:`Lcg128` with the default multiplier runs on the compiled path
    and ends in the same state as the reference path would leave it.
    """
    if draws < 1:
        raise ValueError("draws must be >= 1")
    strategy = Strategy(strategy)
    if strategy is Strategy.BIASED_FLOAT:
        check_float_bound(bound, precision)
    if isinstance(source, Lcg128) and source.multiplier == kernels.LCG_MULTIPLIER:
        src = kernels.state_of(source)
        mm = np.zeros(4, dtype=np.int64)
        code = kernels.strategy_code(strategy, precision)
        words, rems, capped = kernels.tally_draws(code, np.uint64(bound.s), bound.bits, src, draws, mm)
        kernels.sync_back(source, src)
        if capped:
            raise RejectionLimitExceeded("compiled draw hit the rejection cap")
        return EmpiricalTally(draws, rems / draws, words / draws, int(mm[2]), int(mm[3]), int(mm[1]))
    kwargs = {"precision": precision} if strategy is Strategy.BIASED_FLOAT else {}
    words = rems = 0
    rmin, rmax, wmax = math.inf, 0, 0
    for _ in range(draws):
        d = draw(strategy, source, bound, **kwargs).tally_delta
        words += d.words_consumed
        rems += d.remainders_computed
        rmin = min(rmin, d.remainders_computed)
        rmax = max(rmax, d.remainders_computed)
        wmax = max(wmax, d.words_consumed)
    return EmpiricalTally(draws, rems / draws, words / draws, int(rmin), rmax, wmax)


def remainder_std_error(strategy: Strategy | str, bound: Bound, draws: int) -> float:
    """Standard error of the mean remainders per draw over ``draws`` draws."""
    strategy = Strategy(strategy)
    p = float(acceptance_probability(bound))
    if strategy is Strategy.OPENBSD:
        return 0.0
    if strategy is Strategy.JAVA:
        # one remainder per word: geometric count
        return math.sqrt((1 - p) / p**2 / draws)
    if strategy is Strategy.LEMIRE:
        q = bound.s / bound.modulus
        return math.sqrt(q * (1 - q) / draws)
    raise ValueError(f"no variance model for {strategy}")


def words_std_error(bound: Bound, draws: int) -> float:
    p = float(acceptance_probability(bound))
    return math.sqrt((1 - p) / p**2 / draws)


def write_distribution_csv(tables: Sequence[DistributionTable], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["strategy", "bits", "s", "y", "count"])
    for t in tables:
        for y, c in enumerate(t.counts):
            w.writerow([t.strategy.value, t.bound.bits, t.bound.s, y, c])


def write_curve_csv(
    points: Sequence[RemainderCurvePoint],
    out: TextIO,
    empirical: Sequence[dict[str, float]] | None = None,
) -> None:
    """Write ``s,openbsd,java,lemire`` rows, plus ``emp_*`` columns when given."""
    w = csv.writer(out, lineterminator="\n")
    header = ["s", "openbsd", "java", "lemire"]
    if empirical is not None:
        header += ["emp_openbsd", "emp_java", "emp_lemire"]
    w.writerow(header)
    for i, p in enumerate(points):
        row = [p.s, repr(p.openbsd), repr(p.java), repr(p.lemire)]
        if empirical is not None:
            e = empirical[i]
            row += [repr(e["openbsd"]), repr(e["java"]), repr(e["lemire"])]
        w.writerow(row)
