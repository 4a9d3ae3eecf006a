"""How many shuffles a chi-square test needs to see modulo bias.

Computes the exact permutation law of a modulo-reduced shuffle with L-bit
words, the noncentrality it induces at a given number of shuffles, and the
test's power at level alpha. Needs scipy (the ``test`` extra).

    python3 scripts/bias_power.py --bits 8 --n 4 --shuffles 240000
"""

import argparse
import itertools
import math

from scipy import stats

from boundedrand.bounded import Bound
from boundedrand.oracle import exhaustive_distribution
from boundedrand.stats import permutation_rank


def permutation_law(n: int, bits: int) -> list[float]:
    """Probability of each permutation rank under a modulo-reduced shuffle."""
    step = {}
    for i in range(n - 1, 0, -1):
        counts = exhaustive_distribution("biased_modulo", Bound(i + 1, bits)).counts
        step[i] = [c / (1 << bits) for c in counts]
    law = [0.0] * math.factorial(n)
    for js in itertools.product(*(range(i + 1) for i in range(n - 1, 0, -1))):
        perm = list(range(n))
        p = 1.0
        for i, j in zip(range(n - 1, 0, -1), js):
            perm[i], perm[j] = perm[j], perm[i]
            p *= step[i][j]
        law[permutation_rank(perm)] += p
    return law


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bits", type=int, default=8)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--shuffles", type=int, nargs="+", default=[240_000, 1_000_000, 4_000_000])
    ap.add_argument("--alpha", type=float, default=0.001)
    args = ap.parse_args()

    law = permutation_law(args.n, args.bits)
    cells = len(law)
    per_shuffle = sum((p * cells - 1) ** 2 for p in law) / cells
    crit = stats.chi2.isf(args.alpha, cells - 1)
    print(f"n={args.n} L={args.bits}: {cells} cells, noncentrality per shuffle {per_shuffle:.3e}")
    for n_shuffles in args.shuffles:
        lam = n_shuffles * per_shuffle
        power = stats.ncx2.sf(crit, cells - 1, lam)
        print(f"  N={n_shuffles:>10d}  lambda={lam:9.3f}  power at alpha={args.alpha}: {power:.4f}")


if __name__ == "__main__":
    main()
