"""Scalar Cauchy-type kernels and pointwise identity residuals.

Notation for ``s, q`` with ``q`` not on ``[s]``::

    Q_s(q)^{-1}     = (q^2 - 2 Re(s) q + |s|^2)^{-1}           pseudo Cauchy kernel
    Q_{c,s}(q)^{-1} = (s^2 - 2 Re(q) s + |q|^2)^{-1}           commutative version
    S_L^{-1}(s, q)  = Q_s(q)^{-1} (sbar - q)   = (s - qbar) Q_{c,s}(q)^{-1}
    S_R^{-1}(s, q)  = (sbar - q) Q_s(q)^{-1}   = Q_{c,s}(q)^{-1} (s - qbar)
    F_L(s, q)       = -4 (s - qbar) Q_{c,s}(q)^{-2}
    F_R(s, q)       = -4 Q_{c,s}(q)^{-2} (s - qbar)
    D S_L^{-1}(s, q) = -2 Q_{c,s}(q)^{-1}
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DivergenceError, PoleError
from .func import (
    H_FIRST,
    H_SECOND,
    _power_sums,
    fueter_fd,
    laplace2_fd,
    laplace_fd,
    slice_derivative_fd,
)
from .quat import Quaternion, sphere_distance, unit_of

__all__ = [
    "pseudo_kernel",
    "comm_pseudo_kernel",
    "s_kernel_left",
    "s_kernel_right",
    "f_kernel_left",
    "f_kernel_right",
    "dsl_kernel",
    "kernel_identity_residuals",
    "KernelSeries",
    "kernel_series",
    "q_series_errors",
    "q_series_terms",
    "geometric_rate",
    "IDENTITY_MARGIN",
]

IDENTITY_MARGIN = 0.1
_POLE_RTOL = 1e-13


def _pole_guard(s: Quaternion, q: Quaternion) -> None:
    d = sphere_distance(q, s)
    if d <= _POLE_RTOL * max(1.0, s.norm(), q.norm()):
        raise PoleError(f"q lies on the sphere [s] (distance {d:.3g})")


def _args(s, q) -> tuple[Quaternion, Quaternion]:
    s, q = Quaternion.coerce(s), Quaternion.coerce(q)
    _pole_guard(s, q)
    return s, q


def pseudo_kernel(s, q) -> Quaternion:
    """``Q_s(q)^{-1} = (q^2 - 2 Re(s) q + |s|^2)^{-1}``."""
    s, q = _args(s, q)
    # (q - Re s)^2 + |Im s|^2 avoids cancellation near the sphere of s
    d = q - s.w
    return (d * d + s.imag_norm() ** 2).inverse()


def comm_pseudo_kernel(s, q) -> Quaternion:
    """``Q_{c,s}(q)^{-1} = (s^2 - 2 Re(q) s + |q|^2)^{-1}``; lies in the slice of ``s``."""
    s, q = _args(s, q)
    d = s - q.w
    return (d * d + q.imag_norm() ** 2).inverse()


def s_kernel_left(s, q, form: str = "II") -> Quaternion:
    s, q = _args(s, q)
    if form == "I":
        return pseudo_kernel(s, q) * (s.conj() - q)
    if form == "II":
        return (s - q.conj()) * comm_pseudo_kernel(s, q)
    raise ValueError(f"unknown form {form!r}")


def s_kernel_right(s, q, form: str = "II") -> Quaternion:
    s, q = _args(s, q)
    if form == "I":
        return (s.conj() - q) * pseudo_kernel(s, q)
    if form == "II":
        return comm_pseudo_kernel(s, q) * (s - q.conj())
    raise ValueError(f"unknown form {form!r}")


def f_kernel_left(s, q) -> Quaternion:
    s, q = _args(s, q)
    k = comm_pseudo_kernel(s, q)
    return -4.0 * ((s - q.conj()) * (k * k))


def f_kernel_right(s, q) -> Quaternion:
    s, q = _args(s, q)
    k = comm_pseudo_kernel(s, q)
    return -4.0 * ((k * k) * (s - q.conj()))


def dsl_kernel(s, q) -> Quaternion:
    """Closed form of ``D S_L^{-1}(s, q) = -2 Q_{c,s}(q)^{-1}``.

    Evaluated with complex arithmetic in the slice of ``s`` so that it is an
    independent code path from :func:`comm_pseudo_kernel`.
    """
    s, q = _args(s, q)
    J = unit_of(s)
    z = complex(s.w, s.imag_norm())
    val = -2.0 / ((z - q.w) ** 2 + q.imag_norm() ** 2)
    return Quaternion.from_complex(val, J)


# identity battery -----------------------------------------------------------


def kernel_identity_residuals(s, q, margin: float = IDENTITY_MARGIN) -> dict[str, float]:
    """Pointwise residuals of the differential identities of the kernels.

    Derivatives are central differences with one Richardson step (steps
    ``1e-4`` for first order and ``1e-3`` for second order, both multiplied by
    the pole distance when it is below one, since the derivatives of the
    kernels grow like inverse powers of that distance).  Entries ending
    in ``_rel`` are divided by ``max(1, |reference|)``; all others are absolute.
    """
    s, q = Quaternion.coerce(s), Quaternion.coerce(q)
    d = sphere_distance(q, s)
    if d < margin:
        raise PoleError(f"(s, q) closer than the margin {margin} to a pole (distance {d:.3g})")
    h1, h2 = H_FIRST * min(1.0, d), H_SECOND * min(1.0, d)

    def SL(x):
        return s_kernel_left(s, x)

    def SR(x):
        return s_kernel_right(s, x)

    qc = comm_pseudo_kernel(s, q)
    FL = f_kernel_left(s, q)
    FR = f_kernel_right(s, q)
    FLbar = f_kernel_left(s, q.conj())
    out: dict[str, float] = {}

    out["form_left"] = (s_kernel_left(s, q, "I") - s_kernel_left(s, q, "II")).norm()
    out["form_right"] = (s_kernel_right(s, q, "I") - s_kernel_right(s, q, "II")).norm()
    out["dsl_closed"] = (dsl_kernel(s, q) + 2.0 * qc).norm()

    out["fueter_sl"] = (fueter_fd(SL, q, h1, richardson=True) + 2.0 * qc).norm()
    out["fueter_sr"] = (fueter_fd(SR, q, h1, side="right", richardson=True) + 2.0 * qc).norm()

    lap = laplace_fd(SL, q, h2, richardson=True)
    out["laplace_sl_rel"] = (lap - FL).norm() / max(1.0, FL.norm())
    lap = laplace_fd(SR, q, h2, richardson=True)
    out["laplace_sr_rel"] = (lap - FR).norm() / max(1.0, FR.norm())

    def DSL(x):
        return fueter_fd(SL, x, h2, richardson=True)

    d2 = fueter_fd(DSL, q, h2, richardson=True)
    out["fueter2_sl_rel"] = (d2 - FLbar).norm() / max(1.0, FLbar.norm())

    Jq = unit_of(q)
    u, v = q.w, q.imag_norm()

    def Qc(x):
        return comm_pseudo_kernel(s, x)

    lap2 = laplace2_fd(Qc, u, v, Jq, h2, richardson=True)
    out["laplace2_q"] = (lap2 - 4.0 * qc * qc).norm()

    out["harmonic_dsl"] = laplace_fd(lambda x: dsl_kernel(s, x), q, h2, richardson=True).norm()

    # holomorphy in s: (du + I dv) Q_{c,s}(q)^{-1} = 0 on the slice of s
    Js = unit_of(s)
    cr = slice_derivative_fd(lambda x: comm_pseudo_kernel(x, q), s.w, s.imag_norm(), Js, h1, richardson=True)
    out["cauchy_riemann_s"] = cr.norm()

    # not slice holomorphic in q: (du + J dv) Q_{c,s}(u + J v)^{-1} = -F_L(s, qbar)/2
    sd = slice_derivative_fd(Qc, u, v, Jq, h1, richardson=True)
    out["slice_derivative_q"] = (sd + 0.5 * FLbar).norm()
    return out


# series ---------------------------------------------------------------------


class KernelSeries(NamedTuple):
    s_left: Quaternion
    q_comm: Quaternion
    s_tail: float
    q_tail: float


def _series_check(s: Quaternion, q: Quaternion) -> float:
    if s.norm() == 0.0 or q.norm() >= s.norm():
        raise DivergenceError("kernel series need |q| < |s|")
    return q.norm() / s.norm()


def kernel_series(s, q, M: int = 80) -> KernelSeries:
    """Partial sums of ``sum q^m s^{-m-1}`` and ``sum_m P_m(q) s^{-1-m}``.

    ``P_m(q) = sum_{k=1}^m q^{m-k} qbar^{k-1}`` and the second sum is the
    commutative pseudo Cauchy kernel series.  Tails use ``|P_m| <= m |q|^{m-1}``.
    """
    s, q = Quaternion.coerce(s), Quaternion.coerce(q)
    rho = _series_check(s, q)
    sinv = s.inverse()
    S = Quaternion()
    qm, spow = Quaternion(1.0), sinv
    for _ in range(M + 1):
        S = S + qm * spow
        qm, spow = qm * q, spow * sinv
    P = _power_sums(q, M)
    Qs = Quaternion()
    spow = sinv * sinv
    for m in range(1, M + 1):
        Qs = Qs + P[m] * spow
        spow = spow * sinv
    sn = s.norm()
    s_tail = rho ** (M + 1) / (1.0 - rho) / sn
    q_tail = ((M + 1) * rho**M - M * rho ** (M + 1)) / (1.0 - rho) ** 2 / sn**2
    return KernelSeries(S, Qs, s_tail, q_tail)


def q_series_errors(s, q, M: int) -> np.ndarray:
    """``|partial_m - Q_{c,s}(q)^{-1}|`` for ``m = 1..M``."""
    s, q = Quaternion.coerce(s), Quaternion.coerce(q)
    _series_check(s, q)
    exact = comm_pseudo_kernel(s, q)
    P = _power_sums(q, M)
    sinv = s.inverse()
    acc, spow = Quaternion(), sinv * sinv
    errs = []
    for m in range(1, M + 1):
        acc = acc + P[m] * spow
        spow = spow * sinv
        errs.append((acc - exact).norm())
    return np.array(errs)


def q_series_terms(s, q, M: int) -> np.ndarray:
    """``|P_m(q) s^{-1-m}|`` for ``m = 1..M``; free of the cancellation that limits errors."""
    s, q = Quaternion.coerce(s), Quaternion.coerce(q)
    _series_check(s, q)
    P = _power_sums(q, M)
    sinv = s.inverse()
    spow = sinv * sinv
    out = []
    for m in range(1, M + 1):
        out.append((P[m] * spow).norm())
        spow = spow * sinv
    return np.array(out)


def _upper_hull(x: np.ndarray, y: np.ndarray) -> list[int]:
    """Positions of the upper concave envelope of the points ``(x[k], y[k])``."""
    hull: list[int] = []
    for i in range(y.size):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if (y[b] - y[a]) * (x[i] - x[a]) <= (y[i] - y[a]) * (x[b] - x[a]):
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def geometric_rate(values, floor: float = 1e-13, ceiling: float = 1e-2) -> float:
    """Per-term contraction factor of a geometrically decaying sequence.

    Fits a line to the upper envelope of ``log(values)``, sampled at every
    index, over the contiguous stretch with values in ``(floor, ceiling)``.
    The envelope ignores the dips produced by oscillating factors such as
    ``sin(m theta)``, which bias a plain least-squares fit when only a few
    terms are available.  Terms more
    than twelve orders of magnitude below a neighbour are exact cancellations
    evaluated in floating point and are discarded.
    """
    e = np.asarray(values, dtype=float)
    nb = np.zeros_like(e)
    nb[1:] = e[:-1]
    nb[:-1] = np.maximum(nb[:-1], e[1:])
    keep = (e > floor) & (e < ceiling) & (e >= 1e-12 * nb)
    idx = np.nonzero(keep)[0]
    if idx.size < 4:
        raise ValueError("not enough terms above round-off to fit a rate")
    x = idx.astype(float)
    y = np.log(e[idx])
    hull = _upper_hull(x, y)
    if len(hull) < 2:
        raise ValueError("not enough terms above round-off to fit a rate")
    # sample the envelope at every index so each hull segment counts by its length
    xs = np.arange(x[0], x[-1] + 1.0)
    slope = np.polyfit(xs, np.interp(xs, x[hull], y[hull]), 1)[0]
    return float(math.exp(slope))
