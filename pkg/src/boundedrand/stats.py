"""Chi-square uniformity tests for bounded draws, permutations and samples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from . import kernels
from .bounded import Strategy
from .shuffle import SampleSpec, ShuffleConfig, fisher_yates, reservoir_sample
from .word_source import Lcg128, WordSource

MIN_EXPECTED = 5.0

_EPS = 1e-15
_TINY = 1e-300
_MAX_ITER = 10_000


class ChiSquareValidityError(ValueError):
    """Expected cell counts too small for the chi-square approximation."""


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    degrees_of_freedom: int
    p_value: float

    def passes(self, alpha: float) -> bool:
        return self.p_value > alpha


def _gamma_series(a: float, x: float) -> float:
    # lower regularized P(a, x); converges quickly for x < a + 1
    term = total = 1.0 / a
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_continued_fraction(a: float, x: float) -> float:
    # upper regularized Q(a, x) by modified Lentz; for x >= a + 1
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma function Q(a, x)."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x <= 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_continued_fraction(a, x)


def chi2_sf(statistic: float, df: int) -> float:
    """P(X >= statistic) for X chi-square distributed with ``df`` degrees of freedom."""
    if df < 1:
        raise ValueError("degrees of freedom must be >= 1")
    return min(max(gamma_q(df / 2.0, statistic / 2.0), 0.0), 1.0)


def chi_square_uniform(counts: Sequence[int], expected: float | None = None) -> ChiSquareResult:
    """Pearson's test of ``counts`` against equal cell probabilities.

    ``expected`` is the per-cell expectation; it defaults to total / cells.
    """
    obs = np.asarray(counts, dtype=np.float64)
    if obs.ndim != 1 or obs.size == 0:
        raise ValueError("counts must be a non-empty 1-d sequence")
    if expected is None:
        expected = obs.sum() / obs.size
    if expected < MIN_EXPECTED:
        raise ChiSquareValidityError(
            f"expected count per cell is {expected:g}, need at least {MIN_EXPECTED:g}"
        )
    if obs.size == 1:
        return ChiSquareResult(0.0, 0, 1.0)
    statistic = float(((obs - expected) ** 2).sum() / expected)
    df = obs.size - 1
    return ChiSquareResult(statistic, df, chi2_sf(statistic, df))


def permutation_rank(perm: Sequence[int]) -> int:
    """Lehmer-code rank of a permutation of range(n), in [0, n!)."""
    n = len(perm)
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if perm[j] < perm[i])
        rank = rank * (n - i) + smaller
    return rank


def _check_source(source) -> None:
    if isinstance(source, Lcg128) and source.state == 0:
        raise ValueError("Lcg128 state 0 is a fixed point and emits only zeros")


def permutation_frequency_test(
    n: int,
    shuffles: int,
    strategy: Strategy | str,
    source: WordSource,
    *,
    index_width: int = 64,
) -> ChiSquareResult:
    """Shuffle range(n) ``shuffles`` times and test the n! permutation counts.

    An :class:`Lcg128` source runs through the compiled kernels and is left
    in the same state the pure-Python path would leave it.
    """
    if not 1 <= n <= 6:
        raise ValueError("n must be in [1, 6]")
    _check_source(source)
    cells = math.factorial(n)
    if shuffles < 100 * cells:
        raise ValueError(f"need at least {100 * cells} shuffles for n={n}")
    counts = np.zeros(cells, dtype=np.int64)
    if isinstance(source, Lcg128) and source.multiplier == kernels.LCG_MULTIPLIER:
        src = kernels.state_of(source)
        code = kernels.strategy_code(strategy)
        kernels.permutation_counts(n, shuffles, code, index_width, src, counts)
        kernels.sync_back(source, src)
    else:
        config = ShuffleConfig(strategy, index_width)
        for _ in range(shuffles):
            counts[permutation_rank(fisher_yates(list(range(n)), source, config))] += 1
    return chi_square_uniform(counts)


def sample_set_frequency_test(
    spec: SampleSpec,
    trials: int,
    strategy: Strategy | str,
    source: WordSource,
    *,
    index_width: int = 64,
) -> ChiSquareResult:
    """Reservoir-sample range(n) ``trials`` times and test the C(n, k) set counts."""
    _check_source(source)
    cells = math.comb(spec.n, spec.k)
    if cells > 100:
        raise ValueError(f"C({spec.n}, {spec.k}) = {cells} cells, at most 100 allowed")
    if trials < 100 * cells:
        raise ValueError(f"need at least {100 * cells} trials for {cells} cells")
    masks = [sum(1 << v for v in combo) for combo in combinations(range(spec.n), spec.k)]
    if isinstance(source, Lcg128) and source.multiplier == kernels.LCG_MULTIPLIER:
        by_mask = np.zeros(1 << spec.n, dtype=np.int64)
        src = kernels.state_of(source)
        code = kernels.strategy_code(strategy)
        kernels.sample_set_counts(spec.n, spec.k, trials, code, index_width, src, by_mask)
        kernels.sync_back(source, src)
    else:
        by_mask = np.zeros(1 << spec.n, dtype=np.int64)
        population = list(range(spec.n))
        for _ in range(trials):
            sample = reservoir_sample(population, spec, source, strategy, index_width=index_width)
            by_mask[sum(1 << v for v in sample)] += 1
    return chi_square_uniform(by_mask[masks])
