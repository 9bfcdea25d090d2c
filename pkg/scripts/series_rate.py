"""Measured geometric rate of the Q-kernel series against |q|/|s|.

Prints, per ratio, the worst relative deviation of the fitted per-term rate
over random (s, q) pairs.
"""

import argparse
import math

import numpy as np

from qharmonic import geometric_rate, q_series_terms, random_quaternion


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=200)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    print(f"{'ratio':>6} {'mean rate':>10} {'worst dev':>10}")
    for ratio in (0.05, 0.1, 0.3, 0.5, 0.7, 0.9):
        rates = []
        for _ in range(args.pairs):
            s, q = random_quaternion(rng), random_quaternion(rng)
            q = q * (ratio * s.norm() / q.norm())
            rates.append(geometric_rate(q_series_terms(s, q, 80), 0.0, math.inf))
        dev = max(abs(r / ratio - 1.0) for r in rates)
        print(f"{ratio:6.2f} {np.mean(rates):10.4f} {100 * dev:9.2f}%")


if __name__ == "__main__":
    main()
