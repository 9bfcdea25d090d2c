"""Trapezoidal error of the Fueter-mapped Cauchy integral against the node count.

For f(q) = q^3 on the disk of radius 2, the error at a point of modulus r
should fall like (r / 2)^N.  Writes CSV rows ``ratio,N,error,predicted``.
"""

import argparse
import csv
import sys

import numpy as np

from qharmonic import SliceCauchyDomain, SliceFunctionSpec, fueter_analytic, harmonic_eval, random_quaternion


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    R = 2.0
    D = SliceCauchyDomain.disk(R)
    f = SliceFunctionSpec.monomial(3)
    exact = fueter_analytic(f)
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out)
    w.writerow(["ratio", "N", "error", "predicted"])
    for ratio in (0.3, 0.5, 0.7, 0.9):
        q = random_quaternion(rng)
        q = q * (ratio * R / q.norm())
        for N in (16, 32, 64, 128, 256):
            err = (harmonic_eval(f, q, D, N=N) - exact(q)).norm()
            w.writerow([ratio, N, f"{err:.3e}", f"{ratio**N:.3e}"])
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
