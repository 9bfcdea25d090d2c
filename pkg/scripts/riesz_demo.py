"""Riesz projector of a tuple with spectrum on the spheres of radius 1 and 2.

Prints the projector diagnostics for increasing node counts and the distance
to the eigenprojector of the unit sphere.
"""

import argparse

import numpy as np

from qharmonic import QuaternionMatrix, SliceCauchyDomain, SpherePair, riesz_projector, spherical_tuple


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--dim", type=int, default=3)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    radii = [1.0] + [2.0] * (args.dim - 1)
    T = spherical_tuple(radii, rng)
    inner = SliceCauchyDomain((SpherePair(0.0, 1.0, 0.68),))
    outer = SliceCauchyDomain((SpherePair(0.0, 1.0, 0.72),))

    w, V = np.linalg.eigh(T.C)
    Vk = V[:, np.abs(w - 1.0) < 1e-8]
    oracle = QuaternionMatrix.from_components(Vk @ Vk.T)

    print(f"{'N':>5} {'P^2-P':>9} {'TP-PT':>9} {'F form':>9} {'inner':>9} {'oracle':>9}")
    for N in (16, 32, 64, 128, 256):
        P, d = riesz_projector(T, inner, outer, N=N)
        print(
            f"{N:5d} {d.idempotency:9.1e} {d.commutation:9.1e} {d.f_variant:9.1e} "
            f"{d.inner_outer:9.1e} {(P - oracle).norm():9.1e}"
        )


if __name__ == "__main__":
    main()
