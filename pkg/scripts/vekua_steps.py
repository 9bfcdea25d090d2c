"""Residuals of the axial Vekua system against the grid step.

For the Fueter images of q^2 and q^4 the finite-difference stencils are exact,
so only round-off remains and it grows as h shrinks.  Fields that are not
low-degree polynomials show the expected h^2 decay.
"""

import argparse
import math

import numpy as np

from qharmonic import Quaternion, SliceFunctionSpec, axial_decompose, comm_pseudo_kernel, fueter_analytic, vekua_residual


def residuals(field, h, center=(0.4, 0.7)):
    k = np.arange(-3, 4)
    return vekua_residual(axial_decompose(field, center[0] + h * k, center[1] + h * k))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=float, nargs="+", default=[0.04, 0.02, 0.01, 4e-3, 2e-3, 1e-3])
    args = ap.parse_args(argv)

    fields = {
        "D q^2": fueter_analytic(SliceFunctionSpec.monomial(2)),
        "D q^4": fueter_analytic(SliceFunctionSpec.monomial(4)),
        "D q^6": fueter_analytic(SliceFunctionSpec.monomial(6)),
        "Q_c,s(q)^-1": lambda q: comm_pseudo_kernel(Quaternion(1.5, 0, 1, 0), q),
    }
    for name, F in fields.items():
        print(name)
        prev = None
        for h in args.steps:
            a, b = residuals(F, h)
            order = f"{math.log2(prev / a) / math.log2(hp / h):6.2f}" if prev and a > 0 else "     -"
            print(f"  h={h:<8g} A {a:9.2e}  B {b:9.2e}  order(A) {order}")
            prev, hp = a, h


if __name__ == "__main__":
    main()
