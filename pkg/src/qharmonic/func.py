"""Slice hyperholomorphic functions as power series, plus Fueter/Laplace operators.

A :class:`SliceFunctionSpec` carries the coefficients ``a_m`` of
``f(q) = sum q^m a_m`` (left), ``sum a_m q^m`` (right) or, for intrinsic
functions, a real-coefficient polynomial usable on either side.

The finite-difference operators act on arbitrary callables ``H -> H`` and are
second order in the step.  ``richardson=True`` combines steps ``h`` and
``2h`` into a fourth-order estimate, which the identity checks use near poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .errors import DomainError, HypothesisError
from .quat import E1, E2, E3, ONE, Quaternion, UnitImaginary

__all__ = [
    "SliceFunctionSpec",
    "FueterExpansion",
    "AxialSamples",
    "evaluate",
    "fueter_analytic",
    "fueter_power",
    "fueter_fd",
    "conj_fueter_fd",
    "laplace_fd",
    "laplace2_fd",
    "slice_derivative_fd",
    "axial_decompose",
    "vekua_residual",
    "INTRINSIC_TOL",
]

Side = Literal["left", "right", "intrinsic"]
QFunc = Callable[[Quaternion], Quaternion]

INTRINSIC_TOL = 1e-13
H_FIRST = 1e-4
H_SECOND = 1e-3
R_MIN = 1e-3
_UNITS = (E1, E2, E3)


@dataclass(frozen=True)
class SliceFunctionSpec:
    """Power series ``sum q^m a_m`` (or ``sum a_m q^m``) with radius of validity."""

    coefficients: tuple[Quaternion, ...]
    sidedness: Side = "left"
    radius: float = math.inf

    def __post_init__(self):
        coeffs = tuple(Quaternion.coerce(a) for a in self.coefficients)
        if not coeffs:
            coeffs = (Quaternion(),)
        object.__setattr__(self, "coefficients", coeffs)
        if self.sidedness not in ("left", "right", "intrinsic"):
            raise ValueError(f"unknown sidedness {self.sidedness!r}")
        if self.radius <= 0:
            raise ValueError("radius of validity must be positive")
        if self.sidedness == "intrinsic" and not self.has_real_coefficients:
            raise HypothesisError("intrinsic functions need real coefficients")

    # constructors ---------------------------------------------------------

    @classmethod
    def left(cls, coefficients: Sequence, radius: float = math.inf) -> SliceFunctionSpec:
        return cls(tuple(coefficients), "left", radius)

    @classmethod
    def right(cls, coefficients: Sequence, radius: float = math.inf) -> SliceFunctionSpec:
        return cls(tuple(coefficients), "right", radius)

    @classmethod
    def intrinsic(cls, coefficients: Sequence[float], radius: float = math.inf) -> SliceFunctionSpec:
        return cls(tuple(coefficients), "intrinsic", radius)

    @classmethod
    def monomial(cls, m: int, coefficient=1.0, side: Side = "intrinsic") -> SliceFunctionSpec:
        if side == "intrinsic" and not isinstance(coefficient, (int, float)):
            side = "left"
        return cls((0.0,) * m + (coefficient,), side)

    # properties -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def has_real_coefficients(self) -> bool:
        return all(a.imag_norm() <= INTRINSIC_TOL for a in self.coefficients)

    @property
    def is_intrinsic(self) -> bool:
        return self.sidedness == "intrinsic"

    @property
    def acts_left(self) -> bool:
        return self.sidedness != "right"

    # evaluation -----------------------------------------------------------

    def __call__(self, q) -> Quaternion:
        return evaluate(self, q)

    # algebra on coefficient lists ------------------------------------------

    def _combine(self, coeffs, side=None) -> SliceFunctionSpec:
        side = side or self.sidedness
        if side == "intrinsic" and not all(Quaternion.coerce(a).imag_norm() <= INTRINSIC_TOL for a in coeffs):
            side = "left"
        return SliceFunctionSpec(tuple(coeffs), side, self.radius)

    def scaled(self, a) -> SliceFunctionSpec:
        """``f a`` for left series, ``a f`` for right series."""
        a = Quaternion.coerce(a)
        if self.sidedness == "right":
            return self._combine([a * c for c in self.coefficients])
        return self._combine([c * a for c in self.coefficients])

    def plus(self, other: SliceFunctionSpec) -> SliceFunctionSpec:
        side = _common_side(self, other)
        n = max(len(self.coefficients), len(other.coefficients))
        a = list(self.coefficients) + [Quaternion()] * (n - len(self.coefficients))
        b = list(other.coefficients) + [Quaternion()] * (n - len(other.coefficients))
        out = SliceFunctionSpec(tuple(x + y for x, y in zip(a, b)), side, min(self.radius, other.radius))
        return out

    def shifted(self, alpha) -> SliceFunctionSpec:
        """Add the constant ``alpha``."""
        c = list(self.coefficients)
        c[0] = c[0] + Quaternion.coerce(alpha)
        return self._combine(c)

    def times(self, other: SliceFunctionSpec) -> SliceFunctionSpec:
        """Product ``f g`` for intrinsic ``f`` via coefficient convolution.

        Real coefficients commute with everything, so the Cauchy product of the
        coefficient lists is again a (left or right) slice series.
        """
        if not self.is_intrinsic:
            raise HypothesisError("the product rule needs an intrinsic left factor")
        a, b = self.coefficients, other.coefficients
        out = [Quaternion()] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + bj * ai.w
        return SliceFunctionSpec(tuple(out), other.sidedness, min(self.radius, other.radius))

    def times_identity(self) -> SliceFunctionSpec:
        """The series of ``q f(q)`` (left) or ``f(q) q`` (right)."""
        return self._combine((Quaternion(),) + self.coefficients)


def _common_side(f: SliceFunctionSpec, g: SliceFunctionSpec) -> Side:
    if f.sidedness == g.sidedness:
        return f.sidedness
    if f.is_intrinsic:
        return g.sidedness
    if g.is_intrinsic:
        return f.sidedness
    raise HypothesisError("cannot add a left series to a right series")


def evaluate(f: SliceFunctionSpec, q) -> Quaternion:
    """Evaluate the series at ``q`` by Horner's rule on the correct side."""
    q = Quaternion.coerce(q)
    if q.norm() >= f.radius:
        raise DomainError(f"|q| = {q.norm():.6g} outside the radius {f.radius:.6g}")
    acc = Quaternion()
    if f.sidedness == "right":
        for a in reversed(f.coefficients):
            acc = acc * q + a
    else:
        for a in reversed(f.coefficients):
            acc = q * acc + a
    return acc


def fueter_power(q: Quaternion, m: int) -> Quaternion:
    """``D q^m = -2 sum_{k=1}^m q^{m-k} qbar^{k-1}`` (a real quaternion)."""
    return -2.0 * _power_sums(Quaternion.coerce(q), m)[m]


def _power_sums(q: Quaternion, M: int) -> list[Quaternion]:
    """``P_m = sum_{k=1}^m q^{m-k} qbar^{k-1}`` for ``m = 0..M`` via ``P_{m+1} = q P_m + qbar^m``."""
    qb = q.conj()
    out = [Quaternion(), ONE]
    qb_pow = ONE
    for _ in range(1, M):
        qb_pow = qb_pow * qb
        out.append(q * out[-1] + qb_pow)
    return out[: M + 1]


@dataclass(frozen=True)
class FueterExpansion:
    """``D f(q) = -2 sum_m P_m(q) a_m``; evaluable wherever the series converges."""

    coefficients: tuple[Quaternion, ...]
    sidedness: Side
    radius: float

    def __call__(self, q) -> Quaternion:
        q = Quaternion.coerce(q)
        if q.norm() >= self.radius:
            raise DomainError("evaluation outside the radius of validity")
        P = _power_sums(q, len(self.coefficients) - 1)
        acc = Quaternion()
        for m in range(1, len(self.coefficients)):
            a = self.coefficients[m]
            acc = acc + (a * P[m] if self.sidedness == "right" else P[m] * a)
        return -2.0 * acc


def fueter_analytic(f: SliceFunctionSpec) -> FueterExpansion:
    """Closed-form Fueter image of a slice series (left ``D f``, right ``f D``)."""
    return FueterExpansion(f.coefficients, f.sidedness, f.radius)


# finite differences ---------------------------------------------------------


def _richardson(op, h: float, richardson: bool):
    if not richardson:
        return op(h)
    return (4.0 * op(h) - op(2.0 * h)) * (1.0 / 3.0)


def _fueter(g: QFunc, q: Quaternion, h: float, side: str, sign: float) -> Quaternion:
    def op(h):
        acc = (g(q + h) - g(q - h)) * (0.5 / h)
        for e in _UNITS:
            d = (g(q + e * h) - g(q - e * h)) * (0.5 / h)
            acc = acc + sign * (d * e if side == "right" else e * d)
        return acc

    return op


def fueter_fd(g: QFunc, q, h: float = H_FIRST, side: str = "left", richardson: bool = False) -> Quaternion:
    """Central-difference ``D g = d0 g + sum e_i di g`` (``side='right'``: ``g D``)."""
    q = Quaternion.coerce(q)
    return _richardson(_fueter(g, q, h, side, 1.0), h, richardson)


def conj_fueter_fd(g: QFunc, q, h: float = H_FIRST, side: str = "left", richardson: bool = False) -> Quaternion:
    """Central-difference ``Dbar g = d0 g - sum e_i di g``."""
    q = Quaternion.coerce(q)
    return _richardson(_fueter(g, q, h, side, -1.0), h, richardson)


def laplace_fd(g: QFunc, q, h: float = H_SECOND, richardson: bool = False) -> Quaternion:
    """Four-variable Laplacian by second-order central differences."""
    q = Quaternion.coerce(q)
    g0 = g(q)

    def op(h):
        acc = Quaternion()
        for e in (ONE,) + _UNITS:
            acc = acc + (g(q + e * h) - 2.0 * g0 + g(q - e * h))
        return acc * (1.0 / (h * h))

    return _richardson(op, h, richardson)


def laplace2_fd(g: QFunc, u: float, v: float, J, h: float = H_SECOND, richardson: bool = False) -> Quaternion:
    """In-slice Laplacian ``(du^2 + dv^2) g(u + J v)``."""
    J = UnitImaginary.of(J)

    def at(a, b):
        return g(Quaternion(a) + J * b)

    g0 = at(u, v)

    def op(h):
        acc = at(u + h, v) + at(u - h, v) + at(u, v + h) + at(u, v - h) - 4.0 * g0
        return acc * (1.0 / (h * h))

    return _richardson(op, h, richardson)


def slice_derivative_fd(
    g: QFunc, u: float, v: float, J, h: float = H_FIRST, side: str = "left", richardson: bool = False
) -> Quaternion:
    """``(du + J dv) g(u + J v)``; zero iff ``g`` is slice holomorphic there."""
    J = UnitImaginary.of(J)

    def at(a, b):
        return g(Quaternion(a) + J * b)

    def op(h):
        du = (at(u + h, v) - at(u - h, v)) * (0.5 / h)
        dv = (at(u, v + h) - at(u, v - h)) * (0.5 / h)
        return du + (dv * J if side == "right" else J * dv)

    return _richardson(op, h, richardson)


# axial decomposition --------------------------------------------------------


def _qarray(values) -> np.ndarray:
    return np.array([[v.w, v.x, v.y, v.z] for v in values])


def _uniform_step(a: np.ndarray, name: str) -> float:
    if a.ndim != 1 or a.size < 2:
        raise ValueError(f"{name} must be a 1-d grid with at least two points")
    d = np.diff(a)
    if not np.allclose(d, d[0], rtol=1e-9, atol=0.0) or d[0] <= 0:
        raise ValueError(f"{name} must be uniform and increasing")
    return float(d[0])


@dataclass(frozen=True)
class AxialSamples:
    """``A`` and ``B`` of ``f(q0 + rJ) = A + J B`` on a uniform ``(q0, r)`` grid.

    ``A`` and ``B`` have shape ``(len(q0), len(r), 4)`` (quaternion components last).
    """

    q0: np.ndarray
    r: np.ndarray
    J: UnitImaginary
    A: np.ndarray
    B: np.ndarray
    h0: float
    hr: float

    def reconstruct(self) -> np.ndarray:
        """``A + J B`` on the grid, same layout as ``A``."""
        from .quat import hamilton

        JB = hamilton(self.J.array[:, None, None], np.moveaxis(self.B, -1, 0))
        return self.A + np.moveaxis(JB, 0, -1)

    def reconstruction_error(self, ftilde: QFunc) -> float:
        direct = np.empty_like(self.A)
        for i, a in enumerate(self.q0):
            for k, b in enumerate(self.r):
                direct[i, k] = ftilde(Quaternion(float(a)) + self.J * float(b)).array
        return float(np.max(np.linalg.norm(self.reconstruct() - direct, axis=-1)))


def axial_decompose(ftilde: QFunc, q0, r, J=E1) -> AxialSamples:
    """Sample ``A = (f(q0+rJ) + f(q0-rJ))/2`` and ``B = -J (f(q0+rJ) - f(q0-rJ))/2``."""
    J = UnitImaginary.of(J)
    q0 = np.asarray(q0, dtype=float)
    r = np.asarray(r, dtype=float)
    h0 = _uniform_step(q0, "q0")
    hr = _uniform_step(r, "r")
    if r[0] < R_MIN:
        raise DomainError(f"r grid must stay above {R_MIN}")
    mJ = -J
    A = np.empty((q0.size, r.size, 4))
    B = np.empty_like(A)
    for i, a in enumerate(q0):
        for k, b in enumerate(r):
            fp = ftilde(Quaternion(float(a)) + J * float(b))
            fm = ftilde(Quaternion(float(a)) - J * float(b))
            A[i, k] = ((fp + fm) * 0.5).array
            B[i, k] = (mJ * ((fp - fm) * 0.5)).array
    return AxialSamples(q0, r, J, A, B, h0, hr)


def vekua_residual(samples: AxialSamples) -> tuple[float, float]:
    """Max residuals of the second-order system satisfied by axially harmonic fields.

    ``A_00 + A_rr + (2/r) A_r`` and ``B_00 + B_rr + (2 r B_r - 2 B)/r^2`` at
    interior grid points.
    """
    A, B, h0, hr = samples.A, samples.B, samples.h0, samples.hr
    if min(A.shape[:2]) < 5:
        raise ValueError("need at least 5 grid points per axis")
    r = samples.r[None, 1:-1, None]

    def parts(X):
        c = X[1:-1, 1:-1]
        x00 = (X[2:, 1:-1] - 2 * c + X[:-2, 1:-1]) / h0**2
        xrr = (X[1:-1, 2:] - 2 * c + X[1:-1, :-2]) / hr**2
        xr = (X[1:-1, 2:] - X[1:-1, :-2]) / (2 * hr)
        return c, x00, xrr, xr

    _, a00, arr, ar = parts(A)
    b, b00, brr, br = parts(B)
    resA = a00 + arr + 2.0 / r * ar
    resB = b00 + brr + (2.0 * r * br - 2.0 * b) / r**2
    return float(np.linalg.norm(resA, axis=-1).max()), float(np.linalg.norm(resB, axis=-1).max())
