"""Bounded random integer generation and its verification.

Unbiased strategies (``openbsd``, ``java``, ``lemire``) and biased baselines
map uniform L-bit words to integers in [0, s). Shuffles and reservoir
sampling consume them; :mod:`boundedrand.oracle` and :mod:`boundedrand.stats`
check them exhaustively and statistically.
"""

from .bounded import (
    BIASED,
    UNBIASED,
    Bound,
    BoundedDraw,
    RejectionLimitExceeded,
    Strategy,
    UnsupportedStrategy,
    draw,
    draw_biased_float,
    draw_biased_modulo,
    draw_biased_multshift,
    draw_java,
    draw_lemire,
    draw_openbsd,
    expected_remainders,
)
from .shuffle import SampleSpec, ShuffleConfig, buffered_fisher_yates, fisher_yates, reservoir_sample
from .word_source import (
    DEFAULT_SEED,
    LCG_MULTIPLIER,
    DivisionTally,
    Lcg128,
    ScriptedSource,
    SourceExhausted,
    TalliedSource,
    lcg_next,
    next_word,
    parse_seed,
)

__all__ = [
    "BIASED", "UNBIASED", "Bound", "BoundedDraw", "RejectionLimitExceeded", "Strategy",
    "UnsupportedStrategy", "draw", "draw_biased_float", "draw_biased_modulo",
    "draw_biased_multshift", "draw_java", "draw_lemire", "draw_openbsd", "expected_remainders",
    "SampleSpec", "ShuffleConfig", "buffered_fisher_yates", "fisher_yates", "reservoir_sample",
    "DEFAULT_SEED", "LCG_MULTIPLIER", "DivisionTally", "Lcg128", "ScriptedSource",
    "SourceExhausted", "TalliedSource", "lcg_next", "next_word", "parse_seed",
]
