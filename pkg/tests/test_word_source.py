import pytest
from hypothesis import given, strategies as st

from boundedrand.word_source import (
    DEFAULT_SEED,
    LCG_MULTIPLIER,
    WORD_WIDTHS,
    DivisionTally,
    Lcg128,
    ScriptedSource,
    SourceExhausted,
    TalliedSource,
    lcg_next,
    next_word,
    parse_seed,
)

C = 15750249268501108917


def test_multiplier_constant():
    assert LCG_MULTIPLIER == C


def test_lcg_first_step_from_one():
    state, out = lcg_next(1)
    assert state == C
    assert out == 0


def test_lcg_zero_is_fixed_point():
    gen = Lcg128(0)
    assert [gen.next_word() for _ in range(5)] == [0] * 5
    assert gen.state == 0


def test_lcg_high_half_extraction():
    state, out = lcg_next(1 << 64)
    assert state == (C << 64) % (1 << 128)
    assert out == C


@given(st.integers(0, (1 << 128) - 1), st.integers(1, 20))
def test_lcg_matches_modular_power(seed, n):
    gen = Lcg128(seed)
    for _ in range(n):
        out = gen.next_word()
    assert gen.state == seed * pow(C, n, 1 << 128) % (1 << 128)
    assert out == gen.state >> 64
    assert 0 <= out < 1 << 64


def test_scripted_source_replays_then_errors():
    src = ScriptedSource([5, 9], bits=8)
    assert next_word(src, 8) == 5
    assert next_word(src, 8) == 9
    with pytest.raises(SourceExhausted):
        next_word(src, 8)


def test_scripted_source_rejects_oversized_words():
    with pytest.raises(ValueError):
        ScriptedSource([256], bits=8)


@given(st.integers(0, (1 << 64) - 1), st.sampled_from(WORD_WIDTHS))
def test_truncation_keeps_low_bits(w, bits):
    got = next_word(ScriptedSource([w]), bits)
    assert got == w % (1 << bits)
    assert 0 <= got < 1 << bits


def test_cannot_widen_a_narrow_source():
    with pytest.raises(ValueError):
        next_word(ScriptedSource([1], bits=8), 16)


@pytest.mark.parametrize("bits", [0, 7, 12, 128])
def test_rejects_unknown_widths(bits):
    with pytest.raises(ValueError):
        next_word(Lcg128(), bits)


@given(st.integers(1, (1 << 128) - 1), st.sampled_from(WORD_WIDTHS))
def test_tallying_is_observation_only(seed, bits):
    plain = Lcg128(seed)
    tallied = TalliedSource(Lcg128(seed))
    a = [next_word(plain, bits) for _ in range(10)]
    b = [next_word(tallied, bits) for _ in range(10)]
    assert a == b
    assert tallied.tally.words_consumed == 10
    assert tallied.tally.remainders_computed == 0


def test_tally_addition():
    t = DivisionTally(1, 2) + DivisionTally(3, 4)
    assert t == DivisionTally(4, 6)
    t.add(DivisionTally(1, 1))
    assert t == DivisionTally(5, 7)


@pytest.mark.parametrize("text, value", [
    ("1", 1),
    ("0x10", 16),
    ("0xFFFFFFFF_FFFFFFFF_FFFFFFFF_FFFFFFFF", (1 << 128) - 1),
    ("340282366920938463463374607431768211455", (1 << 128) - 1),
])
def test_parse_seed(text, value):
    assert parse_seed(text) == value


@pytest.mark.parametrize("text", ["", "abc", "-1", str(1 << 128), "0x1" + "0" * 32])
def test_parse_seed_rejects(text):
    with pytest.raises(ValueError):
        parse_seed(text)


def test_default_seed_is_odd_and_nonzero():
    assert DEFAULT_SEED % 2 == 1
    assert Lcg128().state == DEFAULT_SEED
