"""Exhaustive first-word tables for every bound at a given width.

At 16 bits this covers all 65535 bounds times 65536 words per strategy,
which takes a while on one core; bounds are split across worker processes.

    python3 scripts/exhaustive_sweep.py --bits 16 --workers 8
"""

import argparse
import multiprocessing as mp
import time

from boundedrand.bounded import UNBIASED, Bound
from boundedrand.oracle import exhaustive_distribution


def _check(args):
    bits, lo, hi = args
    bad = []
    for s in range(lo, hi):
        b = Bound(s, bits)
        per, extra = divmod(b.modulus, s)
        for st in UNBIASED:
            t = exhaustive_distribution(st, b)
            if t.counts != (per,) * s or t.rejected != extra:
                bad.append((st.value, s))
    return bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bits", type=int, choices=(8, 16), default=16)
    ap.add_argument("--workers", type=int, default=mp.cpu_count())
    ap.add_argument("--chunk", type=int, default=512)
    args = ap.parse_args()

    top = 1 << args.bits
    jobs = [(args.bits, lo, min(lo + args.chunk, top)) for lo in range(1, top, args.chunk)]
    t0 = time.perf_counter()
    bad = []
    with mp.Pool(args.workers) as pool:
        for done, part in enumerate(pool.imap_unordered(_check, jobs), 1):
            bad.extend(part)
            print(f"\r{done}/{len(jobs)} chunks", end="", flush=True)
    print(f"\n{top - 1} bounds x {len(UNBIASED)} strategies in {time.perf_counter() - t0:.1f}s, "
          f"{len(bad)} non-uniform")
    for st, s in sorted(bad)[:20]:
        print(f"  {st} s={s}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
