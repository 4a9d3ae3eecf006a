"""Consumers of bounded draws: Fisher-Yates (plain and buffered) and reservoir sampling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import MutableSequence, Sequence, TypeVar

from .bounded import DEFAULT_MAX_WORDS, Bound, Strategy, draw
from .word_source import DivisionTally, WordSource, check_width

T = TypeVar("T")


@dataclass(frozen=True)
class ShuffleConfig:
    """How a shuffle draws its indexes.

    ``index_width`` is the word width used for every bounded draw; 32 and 64
    mirror the two benchmark regimes, 8 and 16 exist for bias experiments.
    ``float_precision`` only matters for ``biased_float``.
    """

    strategy: Strategy = Strategy.LEMIRE
    index_width: int = 64
    buffer_size: int | None = None
    float_precision: str = "double"

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        check_width(self.index_width)
        if self.buffer_size is not None and self.buffer_size < 1:
            raise ValueError(f"buffer size must be >= 1, got {self.buffer_size}")

    def draw_kwargs(self) -> dict:
        if self.strategy is Strategy.BIASED_FLOAT:
            return {"precision": self.float_precision}
        return {"max_words": DEFAULT_MAX_WORDS}


@dataclass(frozen=True)
class SampleSpec:
    n: int
    k: int

    def __post_init__(self):
        if not 0 < self.k <= self.n:
            raise ValueError(f"need 0 < k <= n, got n={self.n}, k={self.k}")


def _check_length(n: int, bits: int) -> None:
    # the largest bound drawn is s = n, which must stay below 2**bits
    if n >= (1 << bits):
        raise ValueError(f"array of {n} elements needs indexes wider than {bits} bits")


def _index(source, upto, config, kwargs, tally):
    """Uniform integer in [0, upto] under ``config``."""
    result = draw(config.strategy, source, Bound(upto + 1, config.index_width), **kwargs)
    if tally is not None:
        tally.add(result.tally_delta)
    return result.value


def fisher_yates(
    array: MutableSequence[T],
    source: WordSource,
    config: ShuffleConfig = ShuffleConfig(),
    tally: DivisionTally | None = None,
) -> MutableSequence[T]:
    """Shuffle ``array`` in place, drawing one index per position from n-1 down to 1."""
    if config.buffer_size is not None:
        raise ValueError("use buffered_fisher_yates for a buffered configuration")
    _check_length(len(array), config.index_width)
    kwargs = config.draw_kwargs()
    for i in range(len(array) - 1, 0, -1):
        j = _index(source, i, config, kwargs, tally)
        array[i], array[j] = array[j], array[i]
    return array


def buffered_fisher_yates(
    array: MutableSequence[T],
    source: WordSource,
    config: ShuffleConfig,
    tally: DivisionTally | None = None,
) -> MutableSequence[T]:
    """Fisher-Yates that precomputes indexes in blocks of ``config.buffer_size``.

    Draws happen in the same order and with the same bounds as the plain
    shuffle, so both produce the same permutation from the same source state.
    """
    if config.buffer_size is None:
        raise ValueError("buffered shuffle needs a buffer_size")
    _check_length(len(array), config.index_width)
    kwargs = config.draw_kwargs()
    b = config.buffer_size
    i = len(array) - 1
    buf = [0] * b
    while i >= b:
        for k in range(b):
            buf[k] = _index(source, i - k, config, kwargs, tally)
        for k in range(b):
            pos = i - k
            j = buf[k]
            array[pos], array[j] = array[j], array[pos]
        i -= b
    while i > 0:
        j = _index(source, i, config, kwargs, tally)
        array[i], array[j] = array[j], array[i]
        i -= 1
    return array


def reservoir_sample(
    array: Sequence[T],
    spec: SampleSpec,
    source: WordSource,
    strategy: Strategy | str = Strategy.LEMIRE,
    *,
    index_width: int = 64,
    tally: DivisionTally | None = None,
) -> list[T]:
    """Pick ``spec.k`` elements of ``array`` in one pass so every k-subset is equally likely."""
    if len(array) != spec.n:
        raise ValueError(f"array has {len(array)} elements, spec says n={spec.n}")
    config = ShuffleConfig(strategy, index_width)
    _check_length(spec.n, index_width)
    kwargs = config.draw_kwargs()
    reservoir = list(array[: spec.k])
    for i in range(spec.k, spec.n):
        j = _index(source, i, config, kwargs, tally)
        if j < spec.k:
            reservoir[j] = array[i]
    return reservoir
