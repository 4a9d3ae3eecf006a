"""Mapping random words to integers in [0, s).

Three unbiased rejection strategies (OpenBSD, Java, nearly-divisionless) and
three biased single-word baselines. Each draw reports how many words it pulled
and how many remainders by a runtime divisor it computed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .word_source import DivisionTally, WordSource, check_width, next_word

DEFAULT_MAX_WORDS = 1 << 16

# Mantissa bits usable for a word converted to [0, 1) without rounding.
FLOAT_MANTISSA = {"single": 24, "double": 53}


class Strategy(str, enum.Enum):
    OPENBSD = "openbsd"
    JAVA = "java"
    LEMIRE = "lemire"
    BIASED_MODULO = "biased_modulo"
    BIASED_MULTSHIFT = "biased_multshift"
    BIASED_FLOAT = "biased_float"

    @property
    def unbiased(self) -> bool:
        return self in UNBIASED

    def __str__(self):
        return self.value


UNBIASED = (Strategy.OPENBSD, Strategy.JAVA, Strategy.LEMIRE)
BIASED = (Strategy.BIASED_MODULO, Strategy.BIASED_MULTSHIFT, Strategy.BIASED_FLOAT)


class RejectionLimitExceeded(RuntimeError):
    """A rejection loop needed more words than the configured cap."""


class UnsupportedStrategy(ValueError):
    pass


@dataclass(frozen=True)
class Bound:
    """Target interval [0, s) for words of ``bits`` bits; 1 <= s < 2**bits."""

    s: int
    bits: int = 64

    def __post_init__(self):
        check_width(self.bits)
        if not 1 <= self.s < (1 << self.bits):
            raise ValueError(
                f"bound s={self.s} outside [1, 2**{self.bits} - 1]"
            )

    @property
    def modulus(self) -> int:
        return 1 << self.bits

    @property
    def threshold(self) -> int:
        """2**L mod s, the number of words rejected by the unbiased strategies."""
        return self.modulus % self.s


@dataclass
class BoundedDraw:
    value: int
    tally_delta: DivisionTally = field(default_factory=DivisionTally)


def _neg_mod(s: int, bits: int) -> int:
    # (2**L - s) mod s via L-bit wrap-around negation, i.e. (-s) % s in C.
    return ((-s) & ((1 << bits) - 1)) % s


def _redraw(source, bits, words, max_words):
    if words >= max_words:
        raise RejectionLimitExceeded(f"no word accepted after {words} draws")
    return next_word(source, bits)


def draw_openbsd(source: WordSource, bound: Bound, *, max_words: int = DEFAULT_MAX_WORDS) -> BoundedDraw:
    s, bits = bound.s, bound.bits
    t = _neg_mod(s, bits)
    x = next_word(source, bits)
    words = 1
    while x < t:
        x = _redraw(source, bits, words, max_words)
        words += 1
    return BoundedDraw(x % s, DivisionTally(words, 2))


def draw_java(source: WordSource, bound: Bound, *, max_words: int = DEFAULT_MAX_WORDS) -> BoundedDraw:
    s, bits = bound.s, bound.bits
    limit = bound.modulus - s
    x = next_word(source, bits)
    r = x % s
    words = 1
    while x - r > limit:
        x = _redraw(source, bits, words, max_words)
        r = x % s
        words += 1
    return BoundedDraw(r, DivisionTally(words, words))


def draw_lemire(source: WordSource, bound: Bound, *, max_words: int = DEFAULT_MAX_WORDS) -> BoundedDraw:
    s, bits = bound.s, bound.bits
    mask = bound.modulus - 1
    x = next_word(source, bits)
    m = x * s
    low = m & mask
    words, remainders = 1, 0
    if low < s:
        t = _neg_mod(s, bits)
        remainders = 1
        while low < t:
            x = _redraw(source, bits, words, max_words)
            m = x * s
            low = m & mask
            words += 1
    return BoundedDraw(m >> bits, DivisionTally(words, remainders))


def draw_biased_modulo(source: WordSource, bound: Bound, **_) -> BoundedDraw:
    x = next_word(source, bound.bits)
    return BoundedDraw(x % bound.s, DivisionTally(1, 1))


def draw_biased_multshift(source: WordSource, bound: Bound, **_) -> BoundedDraw:
    x = next_word(source, bound.bits)
    return BoundedDraw((x * bound.s) >> bound.bits, DivisionTally(1, 0))


def check_float_bound(bound: Bound, precision: str) -> None:
    try:
        mantissa = FLOAT_MANTISSA[precision]
    except KeyError:
        raise ValueError(f"precision must be 'single' or 'double', not {precision!r}") from None
    if bound.s > (1 << mantissa):
        raise ValueError(
            f"s={bound.s} exceeds 2**{mantissa}, the {precision}-precision limit"
        )


def float_scale(x: int, s: int, bits: int, precision: str) -> int:
    """floor(u * s) where u is the word ``x`` as a float in [0, 1)."""
    mantissa = FLOAT_MANTISSA[precision]
    shift = max(bits - mantissa, 0)
    ftype = np.float32 if precision == "single" else np.float64
    # keep only the bits the format holds exactly, so u < 1 strictly
    u = ftype(x >> shift) * ftype(2.0 ** -(bits - shift))
    return int(np.floor(u * ftype(s)))


def draw_biased_float(
    source: WordSource, bound: Bound, *, precision: str = "double", **_
) -> BoundedDraw:
    check_float_bound(bound, precision)
    x = next_word(source, bound.bits)
    return BoundedDraw(float_scale(x, bound.s, bound.bits, precision), DivisionTally(1, 0))


DRAWERS = {
    Strategy.OPENBSD: draw_openbsd,
    Strategy.JAVA: draw_java,
    Strategy.LEMIRE: draw_lemire,
    Strategy.BIASED_MODULO: draw_biased_modulo,
    Strategy.BIASED_MULTSHIFT: draw_biased_multshift,
    Strategy.BIASED_FLOAT: draw_biased_float,
}


def draw(strategy: Strategy | str, source: WordSource, bound: Bound, **kwargs) -> BoundedDraw:
    """Dispatch to the drawing function for ``strategy``.

    Keyword arguments are forwarded: ``max_words`` caps rejection loops and
    ``precision`` selects the float format for ``biased_float``.
    """
    return DRAWERS[Strategy(strategy)](source, bound, **kwargs)


def expected_remainders(strategy: Strategy | str, bound: Bound) -> Fraction:
    """Mean number of runtime-divisor remainders per value returned."""
    strategy = Strategy(strategy)
    n = bound.modulus
    if strategy is Strategy.OPENBSD:
        return Fraction(2)
    if strategy is Strategy.JAVA:
        return Fraction(n, n - bound.threshold)
    if strategy is Strategy.LEMIRE:
        return Fraction(bound.s, n)
    raise UnsupportedStrategy(f"no remainder model for biased strategy {strategy}")


def acceptance_probability(bound: Bound) -> Fraction:
    """Probability that one word is accepted by any unbiased strategy."""
    return 1 - Fraction(bound.threshold, bound.modulus)
