"""Compiled twins of the reference strategies, for bulk experiments.

Every kernel pulls words from the 128-bit LCG held as ``src = [hi, lo, cursor]``
(two uint64 limbs; ``cursor`` indexes ``script`` instead when that array is
non-empty) and keeps a running
``tally = [words, remainders, max_remainders_per_draw, capped]``.
The Python wrappers at the bottom sync state with :class:`Lcg128` so a kernel
run leaves the generator exactly where the reference path would.

All arithmetic is on explicit uint64 values: numba promotes mixed
signed/unsigned operands to float64.
"""

from __future__ import annotations

import numba as nb
import numpy as np
from llvmlite import ir
from numba.core import types
from numba.extending import intrinsic

from .bounded import Bound, Strategy, check_float_bound
from .word_source import LCG_MULTIPLIER, Lcg128

U64 = np.uint64
_ZERO = U64(0)
_ONE = U64(1)
_ALL = U64(0xFFFFFFFFFFFFFFFF)
_C = U64(LCG_MULTIPLIER)

# kernel strategy codes; float precision is folded into the code
CODE_OPENBSD, CODE_JAVA, CODE_LEMIRE = 0, 1, 2
CODE_MODULO, CODE_MULTSHIFT, CODE_FLOAT_DOUBLE, CODE_FLOAT_SINGLE = 3, 4, 5, 6

W_WORDS, W_REM, W_MAXREM, W_CAPPED = 0, 1, 2, 3

_jit = nb.njit(cache=True, error_model="numpy", nogil=True)
# inlined at the numba IR level; a plain call costs refcount traffic per array argument
_inline = nb.njit(cache=True, error_model="numpy", nogil=True, inline="always")


@intrinsic
def mul_wide(typingctx, a, b):
    """Full 64x64 -> 128-bit product as (high, low) uint64 limbs.

    Emitted as one 128-bit LLVM multiply, which x86-64 lowers to a single
    widening ``mul``.
    """
    if a != types.uint64 or b != types.uint64:
        return None
    sig = types.UniTuple(types.uint64, 2)(types.uint64, types.uint64)

    def codegen(context, builder, signature, args):
        i64, i128 = ir.IntType(64), ir.IntType(128)
        m = builder.mul(builder.zext(args[0], i128), builder.zext(args[1], i128))
        lo = builder.trunc(m, i64)
        hi = builder.trunc(builder.lshr(m, ir.Constant(i128, 64)), i64)
        return context.make_tuple(builder, signature.return_type, [hi, lo])

    return sig, codegen


@_inline
def lcg_step(src):
    hi, lo = mul_wide(src[1], _C)
    src[1] = lo
    src[0] = hi + src[0] * _C
    return src[0]


@_jit
def width_mask(bits):
    if bits == 64:
        return _ALL
    return (_ONE << U64(bits)) - _ONE


@_inline
def pull(src, script, bits, tally):
    tally[W_WORDS] += 1
    if script.size > 0:
        w = script[src[2]]
        src[2] += _ONE
    else:
        w = lcg_step(src)
    return w & width_mask(bits)


@_jit
def neg_mod(s, bits):
    return ((_ZERO - s) & width_mask(bits)) % s


@_jit
def mul_split(x, s, bits):
    """(x*s) >> L and (x*s) mod 2**L for L-bit operands."""
    if bits == 64:
        return mul_wide(x, s)
    m = x * s
    return m >> U64(bits), m & width_mask(bits)


@_inline
def _note_remainders(tally, n):
    tally[W_REM] += n
    if n > tally[W_MAXREM]:
        tally[W_MAXREM] = n


@_inline
def draw(code, s, bits, src, script, tally, max_words):
    """One bounded draw. On hitting ``max_words`` sets the capped flag, returns 0."""
    if code == CODE_OPENBSD:
        t = neg_mod(s, bits)
        x = pull(src, script, bits, tally)
        words = 1
        while x < t:
            if words >= max_words:
                tally[W_CAPPED] = 1
                return _ZERO
            x = pull(src, script, bits, tally)
            words += 1
        _note_remainders(tally, 2)
        return x % s
    if code == CODE_JAVA:
        limit = (_ZERO - s) & width_mask(bits)
        x = pull(src, script, bits, tally)
        r = x % s
        words = 1
        while x - r > limit:
            if words >= max_words:
                tally[W_CAPPED] = 1
                _note_remainders(tally, words)
                return _ZERO
            x = pull(src, script, bits, tally)
            r = x % s
            words += 1
        _note_remainders(tally, words)
        return r
    if code == CODE_LEMIRE:
        x = pull(src, script, bits, tally)
        high, low = mul_split(x, s, bits)
        rem = 0
        if low < s:
            t = neg_mod(s, bits)
            rem = 1
            words = 1
            while low < t:
                if words >= max_words:
                    tally[W_CAPPED] = 1
                    _note_remainders(tally, rem)
                    return _ZERO
                x = pull(src, script, bits, tally)
                high, low = mul_split(x, s, bits)
                words += 1
        _note_remainders(tally, rem)
        return high
    x = pull(src, script, bits, tally)
    if code == CODE_MODULO:
        _note_remainders(tally, 1)
        return x % s
    if code == CODE_MULTSHIFT:
        return mul_split(x, s, bits)[0]
    if code == CODE_FLOAT_SINGLE:
        shift = bits - 24 if bits > 24 else 0
        u = np.float32(x >> U64(shift)) * np.float32(2.0 ** -(bits - shift))
        return U64(np.floor(u * np.float32(s)))
    shift = bits - 53 if bits > 53 else 0
    u = np.float64(x >> U64(shift)) * np.float64(2.0 ** -(bits - shift))
    return U64(np.floor(u * np.float64(s)))


@_jit
def run_draws(code, s, bits, src, tally, n, out):
    script = np.empty(0, dtype=np.uint64)
    for i in range(n):
        out[i] = draw(code, s, bits, src, script, tally, 1 << 16)


@_jit
def tally_draws(code, s, bits, src, n, min_max):
    """Run n draws; per-draw min/max of words and remainders go to ``min_max``."""
    script = np.empty(0, dtype=np.uint64)
    tally = np.zeros(4, dtype=np.int64)
    words = 0
    rems = 0
    for i in range(n):
        w0 = tally[W_WORDS]
        r0 = tally[W_REM]
        draw(code, s, bits, src, script, tally, 1 << 16)
        dw = tally[W_WORDS] - w0
        dr = tally[W_REM] - r0
        if i == 0 or dw < min_max[0]:
            min_max[0] = dw
        if i == 0 or dw > min_max[1]:
            min_max[1] = dw
        if i == 0 or dr < min_max[2]:
            min_max[2] = dr
        if i == 0 or dr > min_max[3]:
            min_max[3] = dr
        words += dw
        rems += dr
    return words, rems, tally[W_CAPPED]


@_jit
def first_word_table(code, s, bits, counts):
    """Classify every L-bit word by first-word acceptance; returns rejections."""
    script = np.empty(1, dtype=np.uint64)
    src = np.zeros(3, dtype=np.uint64)
    tally = np.zeros(4, dtype=np.int64)
    rejected = 0
    n = 1 << bits
    for x in range(n):
        script[0] = U64(x)
        src[2] = _ZERO
        tally[W_CAPPED] = 0
        y = draw(code, s, bits, src, script, tally, 1)
        if tally[W_CAPPED]:
            rejected += 1
        else:
            counts[y] += 1
    return rejected


@_jit
def shuffle(arr, code, bits, src, tally):
    script = np.empty(0, dtype=np.uint64)
    i = arr.size - 1
    while i > 0:
        j = draw(code, U64(i + 1), bits, src, script, tally, 1 << 16)
        tmp = arr[i]
        arr[i] = arr[j]
        arr[j] = tmp
        i -= 1


@_jit
def buffered_shuffle(arr, code, bits, buf_size, src, tally):
    script = np.empty(0, dtype=np.uint64)
    buf = np.empty(buf_size, dtype=np.uint64)
    i = arr.size - 1
    while i >= buf_size:
        for k in range(buf_size):
            buf[k] = draw(code, U64(i - k + 1), bits, src, script, tally, 1 << 16)
        for k in range(buf_size):
            pos = i - k
            j = buf[k]
            tmp = arr[pos]
            arr[pos] = arr[j]
            arr[j] = tmp
        i -= buf_size
    while i > 0:
        j = draw(code, U64(i + 1), bits, src, script, tally, 1 << 16)
        tmp = arr[i]
        arr[i] = arr[j]
        arr[j] = tmp
        i -= 1


@_jit
def lehmer_rank(perm):
    n = perm.size
    rank = 0
    for i in range(n):
        smaller = 0
        for j in range(i + 1, n):
            if perm[j] < perm[i]:
                smaller += 1
        rank = rank * (n - i) + smaller
    return rank


@_jit
def permutation_counts(n, shuffles, code, bits, src, counts):
    tally = np.zeros(4, dtype=np.int64)
    perm = np.empty(n, dtype=np.int64)
    for _ in range(shuffles):
        for i in range(n):
            perm[i] = i
        shuffle(perm, code, bits, src, tally)
        counts[lehmer_rank(perm)] += 1


@_jit
def reservoir(n, k, code, bits, src, tally, out):
    script = np.empty(0, dtype=np.uint64)
    for i in range(k):
        out[i] = i
    for i in range(k, n):
        j = draw(code, U64(i + 1), bits, src, script, tally, 1 << 16)
        if j < U64(k):
            out[j] = i


@_jit
def sample_set_counts(n, k, trials, code, bits, src, counts):
    """Counts reservoir samples of range(n) keyed by their membership bitmask."""
    tally = np.zeros(4, dtype=np.int64)
    out = np.empty(k, dtype=np.int64)
    for _ in range(trials):
        reservoir(n, k, code, bits, src, tally, out)
        mask = 0
        for v in out:
            mask |= 1 << v
        counts[mask] += 1


# ---------------------------------------------------------------------------
# Python-side glue


def strategy_code(strategy: Strategy | str, precision: str = "double") -> int:
    strategy = Strategy(strategy)
    if strategy is Strategy.BIASED_FLOAT:
        return CODE_FLOAT_SINGLE if precision == "single" else CODE_FLOAT_DOUBLE
    return list(Strategy).index(strategy)


def state_of(gen: Lcg128) -> np.ndarray:
    if gen.multiplier != LCG_MULTIPLIER:
        raise ValueError("compiled kernels only support the default LCG multiplier")
    return np.array(
        [gen.state >> 64, gen.state & 0xFFFFFFFFFFFFFFFF, 0], dtype=np.uint64
    )


def sync_back(gen: Lcg128, src: np.ndarray) -> None:
    gen.state = (int(src[0]) << 64) | int(src[1])


def lcg_outputs(gen: Lcg128, n: int) -> np.ndarray:
    """n consecutive 64-bit outputs of ``gen``, advancing it."""
    src = state_of(gen)
    out = np.empty(n, dtype=np.uint64)
    _lcg_fill(src, out)
    sync_back(gen, src)
    return out


@_jit
def _lcg_fill(src, out):
    for i in range(out.size):
        out[i] = lcg_step(src)


def fast_draws(strategy, bound: Bound, gen: Lcg128, n: int, *, precision: str = "double"):
    """Draw ``n`` values with the compiled path. Returns (values, tally array)."""
    if Strategy(strategy) is Strategy.BIASED_FLOAT:
        check_float_bound(bound, precision)
    src = state_of(gen)
    tally = np.zeros(4, dtype=np.int64)
    out = np.empty(n, dtype=np.uint64)
    run_draws(strategy_code(strategy, precision), U64(bound.s), bound.bits, src, tally, n, out)
    sync_back(gen, src)
    return out, tally
