"""Sources of uniformly distributed fixed-width random words.

Every source exposes ``bits`` (its native word width) and ``next_word()``.
Narrower words are obtained with :func:`next_word`, which keeps the least
significant bits of each native word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Protocol

WORD_WIDTHS = (8, 16, 32, 64)

LCG_MULTIPLIER = 15750249268501108917
# Odd, so the multiplicative generator stays off its short even-state orbits.
DEFAULT_SEED = 0x853C49E6748FEA9B_DA3E39CB94B95BDB

_MASK128 = (1 << 128) - 1


class SourceExhausted(RuntimeError):
    """A scripted source was asked for more words than it holds."""


class WordSource(Protocol):
    bits: int

    def next_word(self) -> int: ...


def check_width(bits: int) -> int:
    if bits not in WORD_WIDTHS:
        raise ValueError(f"word width must be one of {WORD_WIDTHS}, got {bits!r}")
    return bits


def lcg_next(state: int, multiplier: int = LCG_MULTIPLIER) -> tuple[int, int]:
    """One step of X' = c * X mod 2**128. Returns ``(X', X' >> 64)``."""
    state = (multiplier * state) & _MASK128
    return state, state >> 64


class Lcg128:
    """Multiplicative congruential generator with 128-bit state.

    Emits the high 64 bits of each new state. Use an odd seed: a seed with
    2**k dividing it keeps k trailing zero bits in every state, so for k > 64
    the lowest k - 64 output bits are always zero (and seed 0 is a fixed point).
    """

    bits = 64

    def __init__(self, seed: int = DEFAULT_SEED, multiplier: int = LCG_MULTIPLIER):
        if not 0 <= seed <= _MASK128:
            raise ValueError("seed must fit in 128 bits")
        if not 0 < multiplier <= _MASK128:
            raise ValueError("multiplier must be a positive 128-bit integer")
        self.state = seed
        self.multiplier = multiplier

    def next_word(self) -> int:
        self.state, out = lcg_next(self.state, self.multiplier)
        return out

    def copy(self) -> "Lcg128":
        return Lcg128(self.state, self.multiplier)

    def __repr__(self):
        return f"Lcg128(state={self.state:#x})"


class ScriptedSource:
    """Replays a fixed list of words, then raises :class:`SourceExhausted`."""

    def __init__(self, words: Iterable[int], bits: int = 64):
        self.bits = check_width(bits)
        self.words = list(words)
        for w in self.words:
            if not 0 <= w < (1 << bits):
                raise ValueError(f"scripted word {w} does not fit in {bits} bits")
        self.cursor = 0

    def next_word(self) -> int:
        if self.cursor >= len(self.words):
            raise SourceExhausted(f"script of {len(self.words)} words exhausted")
        w = self.words[self.cursor]
        self.cursor += 1
        return w

    @property
    def remaining(self) -> int:
        return len(self.words) - self.cursor


@dataclass
class DivisionTally:
    """Words drawn and remainders by runtime divisors (powers of two excluded)."""

    words_consumed: int = 0
    remainders_computed: int = 0

    def add(self, other: "DivisionTally") -> None:
        self.words_consumed += other.words_consumed
        self.remainders_computed += other.remainders_computed

    def __add__(self, other: "DivisionTally") -> "DivisionTally":
        return DivisionTally(
            self.words_consumed + other.words_consumed,
            self.remainders_computed + other.remainders_computed,
        )


class TalliedSource:
    """Pass-through wrapper that counts the words pulled from ``inner``."""

    def __init__(self, inner: WordSource, tally: DivisionTally | None = None):
        self.inner = inner
        self.tally = tally if tally is not None else DivisionTally()

    @property
    def bits(self) -> int:
        return self.inner.bits

    def next_word(self) -> int:
        w = self.inner.next_word()
        self.tally.words_consumed += 1
        return w


def next_word(source: WordSource, bits: int) -> int:
    """Draw one word from ``source`` truncated to its ``bits`` low bits."""
    check_width(bits)
    if bits > source.bits:
        raise ValueError(f"cannot draw {bits}-bit words from a {source.bits}-bit source")
    w = source.next_word()
    if bits == source.bits:
        return w
    return w & ((1 << bits) - 1)


def parse_seed(text: str) -> int:
    """Parse a decimal or ``0x``-prefixed hexadecimal 128-bit seed."""
    try:
        value = int(text.replace("_", ""), 0)
    except ValueError:
        raise ValueError(f"not a decimal or hexadecimal integer: {text!r}") from None
    if not 0 <= value <= _MASK128:
        raise ValueError(f"seed {text!r} does not fit in 128 bits")
    return value
