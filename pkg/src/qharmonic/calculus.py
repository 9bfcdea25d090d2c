"""Functional calculi on commuting tuples and the identities relating them.

For ``f`` slice hyperholomorphic on a slice Cauchy domain ``U`` containing
the S-spectrum of ``T``::

    S-calculus  f(T)        = (1/2pi) int S_L^{-1}(s, T) ds_J f(s)
    Q-calculus  (D f)(T)    = -(1/pi) int Q_{c,s}(T)^{-1} ds_J f(s)
    F-calculus  (Delta f)(T) = (1/2pi) int F_L(s, T) ds_J f(s)

with the mirrored right-sided integrals for right series.  Each calculus has
a power-series oracle (``*_series``) used to check the contour versions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .contour import (
    DEFAULT_NODES,
    POLE_MARGIN,
    QuadContour,
    SliceCauchyDomain,
    check_pole_margin,
    discretize,
    sandwich_integrate,
)
from .errors import ContourError, DivergenceError, DomainError, HypothesisError, PoleError, SpectrumError
from .func import SliceFunctionSpec
from .qmatrix import (
    CommutingTuple,
    QuaternionMatrix,
    SSpectrum,
    f_resolvent_left,
    f_resolvent_right,
    power_sums,
    qcs_T_inv,
    s_resolvent_left,
    s_resolvent_right,
    s_spectrum,
)
from .quat import E1, Quaternion, UnitImaginary, in_sphere

__all__ = [
    "CalculusRequest",
    "default_domain",
    "check_enclosed",
    "s_calculus",
    "q_calculus",
    "f_calculus",
    "s_calculus_series",
    "q_calculus_series",
    "f_calculus_series",
    "moment_H",
    "moment_H_direct",
    "moment_Q",
    "moment_Q_direct",
    "RieszDiagnostics",
    "riesz_projector",
    "q_resolvent_residuals",
    "product_rule_residuals",
    "vanishing_integral_check",
    "lemma_app_check",
    "require_riesz_hypotheses",
]


def default_domain(T: CommutingTuple, ratio: float = 0.7, minimum: float = 1.0) -> SliceCauchyDomain:
    """Disk about 0 whose radius puts the S-spectrum at ``ratio`` of the radius."""
    rho = s_spectrum(T).radius()
    return SliceCauchyDomain.disk(max(rho / ratio, minimum))


def check_enclosed(T: CommutingTuple, domain: SliceCauchyDomain, margin: float = POLE_MARGIN) -> SSpectrum:
    """Require every spectral slice point inside ``domain`` and away from its boundary."""
    spec = s_spectrum(T)
    pts = spec.slice_points()
    for z in pts:
        if not domain.contains(z):
            raise SpectrumError(f"spectral point {z:.6g} is not enclosed by the domain")
    check_pole_margin(domain, pts, margin)
    return spec


@dataclass(frozen=True)
class CalculusRequest:
    """Everything a contour calculus needs; validated on construction."""

    f: SliceFunctionSpec
    T: CommutingTuple
    domain: SliceCauchyDomain
    J: UnitImaginary = E1
    N: int = DEFAULT_NODES
    margin: float = POLE_MARGIN

    def __post_init__(self):
        object.__setattr__(self, "J", UnitImaginary.of(self.J))
        check_enclosed(self.T, self.domain, self.margin)
        if self.domain.max_modulus() >= self.f.radius:
            raise DomainError("the function's radius of validity does not cover the domain")

    @cached_property
    def contour(self) -> QuadContour:
        return discretize(self.domain, self.J, self.N)


def _side(f: SliceFunctionSpec, side: str | None) -> str:
    if side is None:
        return "right" if f.sidedness == "right" else "left"
    if side not in ("left", "right"):
        raise ValueError(f"unknown side {side!r}")
    if (side == "left" and f.sidedness == "right") or (side == "right" and f.sidedness == "left"):
        raise HypothesisError(f"a {f.sidedness} function cannot be used in the {side} calculus")
    return side


def _integral(req: CalculusRequest, left_kernel, right_kernel, side: str | None):
    T = req.T
    if _side(req.f, side) == "left":
        return sandwich_integrate(lambda s: left_kernel(s, T), req.contour, req.f)
    return sandwich_integrate(req.f, req.contour, lambda s: right_kernel(s, T))


def s_calculus(req: CalculusRequest, side: str | None = None) -> QuaternionMatrix:
    """``f(T)`` through the S-resolvent."""
    return _integral(req, s_resolvent_left, s_resolvent_right, side) * (1.0 / (2.0 * math.pi))


def q_calculus(req: CalculusRequest, side: str | None = None) -> QuaternionMatrix:
    """``(D f)(T)`` through ``Q_{c,s}(T)^{-1}``."""
    return _integral(req, qcs_T_inv, qcs_T_inv, side) * (-1.0 / math.pi)


def f_calculus(req: CalculusRequest, side: str | None = None) -> QuaternionMatrix:
    """``(Delta f)(T)`` through the F-resolvent."""
    return _integral(req, f_resolvent_left, f_resolvent_right, side) * (1.0 / (2.0 * math.pi))


# power-series oracles -------------------------------------------------------


def _series_guard(f: SliceFunctionSpec, T: CommutingTuple) -> None:
    if T.norm() >= f.radius:
        raise DivergenceError("||T|| must be smaller than the radius of validity")


def _apply(f: SliceFunctionSpec, terms: list[QuaternionMatrix], n: int) -> QuaternionMatrix:
    acc = QuaternionMatrix.zeros(n)
    for a, P in zip(f.coefficients, terms):
        acc = acc + (a * P if f.sidedness == "right" else P * a)
    return acc


def s_calculus_series(f: SliceFunctionSpec, T: CommutingTuple) -> QuaternionMatrix:
    """``sum T^m a_m`` (right: ``sum a_m T^m``) over the stored coefficients."""
    _series_guard(f, T)
    pows = [QuaternionMatrix.identity(T.n)]
    for _ in range(f.degree):
        pows.append(pows[-1] * T.T)
    return _apply(f, pows, T.n)


def q_calculus_series(f: SliceFunctionSpec, T: CommutingTuple) -> QuaternionMatrix:
    """``-2 sum_m sum_{k=1}^m T^{m-k} Tbar^{k-1} a_m``."""
    _series_guard(f, T)
    P = power_sums(T, f.degree)
    return _apply(f, [-2.0 * p for p in P], T.n)


def moment_H_direct(T: CommutingTuple, m: int) -> QuaternionMatrix:
    """``H_m(T) = sum_{k=0}^m T^{m-k} Tbar^k``."""
    A, Ab = T.T, T.Tbar
    return sum(((A ** (m - k)) * (Ab**k) for k in range(m + 1)), QuaternionMatrix.zeros(T.n))


def moment_Q_direct(T: CommutingTuple, m: int) -> QuaternionMatrix:
    """``Q_m(T) = sum_j 2 (m - j + 1) / ((m + 1)(m + 2)) T^{m-j} Tbar^j``."""
    A, Ab = T.T, T.Tbar
    c = 2.0 / ((m + 1) * (m + 2))
    return sum(((c * (m - j + 1)) * ((A ** (m - j)) * (Ab**j)) for j in range(m + 1)), QuaternionMatrix.zeros(T.n))


def f_calculus_series(f: SliceFunctionSpec, T: CommutingTuple) -> QuaternionMatrix:
    """``sum_m -2 (m - 1) m Q_{m-2}(T) a_m``, the Laplacian of the power series."""
    _series_guard(f, T)
    terms = [QuaternionMatrix.zeros(T.n)] * min(2, f.degree + 1)
    terms += [(-2.0 * (m - 1) * m) * moment_Q_direct(T, m - 2) for m in range(2, f.degree + 1)]
    return _apply(f, terms, T.n)


# moments --------------------------------------------------------------------


def _contour_for(T: CommutingTuple, domain, J, N, margin=POLE_MARGIN) -> QuadContour:
    check_enclosed(T, domain, margin)
    return discretize(domain, J, N)


def moment_H(T: CommutingTuple, m: int, domain: SliceCauchyDomain, J=E1, N: int = DEFAULT_NODES) -> QuaternionMatrix:
    """``(1/2pi) int Q_{c,s}(T)^{-1} ds_J s^{m+1}``."""
    C = _contour_for(T, domain, J, N)
    val = sandwich_integrate(lambda s: qcs_T_inv(s, T), C, lambda s: s ** (m + 1))
    return val * (1.0 / (2.0 * math.pi))


def moment_Q(T: CommutingTuple, m: int, domain: SliceCauchyDomain, J=E1, N: int = DEFAULT_NODES,
             side: str = "left") -> QuaternionMatrix:
    """``-1/(4pi (m+1)(m+2)) int F_L(s, T) ds_J s^{m+2}`` (right: ``s^{m+2} ds_J F_R``)."""
    C = _contour_for(T, domain, J, N)
    if side == "left":
        val = sandwich_integrate(lambda s: f_resolvent_left(s, T), C, lambda s: s ** (m + 2))
    elif side == "right":
        val = sandwich_integrate(lambda s: s ** (m + 2), C, lambda s: f_resolvent_right(s, T))
    else:
        raise ValueError(f"unknown side {side!r}")
    return val * (-1.0 / (4.0 * math.pi * (m + 1) * (m + 2)))


# Riesz projectors -----------------------------------------------------------


def require_riesz_hypotheses(T: CommutingTuple) -> None:
    """``T0 = 0`` and real spectra for ``T1, T2, T3``."""
    if not T.has_zero_real_part():
        raise HypothesisError("the projector identities need T0 = 0")
    if not T.has_real_component_spectra():
        raise HypothesisError("the projector identities need components with real spectrum")


class RieszDiagnostics(NamedTuple):
    idempotency: float
    commutation: float
    f_variant: float
    inner_outer: float
    P_check: QuaternionMatrix


def _split(T: CommutingTuple, inner: SliceCauchyDomain, outer: SliceCauchyDomain, margin: float) -> None:
    spec = s_spectrum(T)
    pts = spec.slice_points()
    for z in pts:
        if inner.contains(z):
            continue
        if outer.contains(z) or outer.boundary_distance(z) == 0.0:
            raise SpectrumError(f"spectral point {z:.6g} lies between the inner and outer domains")
    check_pole_margin(inner, pts, margin)
    check_pole_margin(outer, pts, margin)
    theta = np.linspace(0.0, 2.0 * np.pi, 64, endpoint=False)
    for c in inner.circles():
        if c.orientation > 0 and not all(outer.contains(c.center + c.radius * np.exp(1j * t)) for t in theta):
            raise ContourError("the inner domain must lie inside the outer one")


def riesz_projector(
    T: CommutingTuple,
    inner: SliceCauchyDomain,
    outer: SliceCauchyDomain,
    J=E1,
    N: int = DEFAULT_NODES,
    margin: float = POLE_MARGIN,
) -> tuple[QuaternionMatrix, RieszDiagnostics]:
    """``P = (1/2pi) int_{outer} s ds_J Q_{c,s}(T)^{-1}`` with diagnostics.

    Also evaluates ``(1/2pi) int_{inner} Q_{c,p}(T)^{-1} dp_J p`` and the
    F-calculus form ``-(1/8pi) int_{inner} F_L(p, T) dp_J p^2``; both must
    coincide with ``P``.
    """
    require_riesz_hypotheses(T)
    _split(T, inner, outer, margin)
    Co, Ci = discretize(outer, J, N), discretize(inner, J, N)
    k = 1.0 / (2.0 * math.pi)
    P = sandwich_integrate(lambda s: s, Co, lambda s: qcs_T_inv(s, T)) * k
    P_inner = sandwich_integrate(lambda p: qcs_T_inv(p, T), Ci, lambda p: p) * k
    P_check = sandwich_integrate(lambda p: f_resolvent_left(p, T), Ci, lambda p: p * p) * (-1.0 / (8.0 * math.pi))
    A = T.T
    diag = RieszDiagnostics(
        idempotency=(P * P - P).norm(),
        commutation=(A * P - P * A).norm(),
        f_variant=(P - P_check).norm(),
        inner_outer=(P - P_inner).norm(),
        P_check=P_check,
    )
    return P, diag


# resolvent equations --------------------------------------------------------


def q_resolvent_residuals(T: CommutingTuple, s, p, m_max: int = 4) -> dict[str, float]:
    """Residual norms of the Q-resolvent equations at ``(s, p)``.

    Keys: ``s_resolvent`` (the S-resolvent equation they derive from),
    ``star5``, ``star6`` (products ``Q_{c,s} Q_{c,p}`` through S-resolvents),
    where with ``X = Q_{c,s} S_L^{-1}(p) - S_R^{-1}(s) Q_{c,p}``::

        Q_{c,s} Q_{c,p} = [X p - sbar X] (p^2 - 2 s0 p + |s|^2)^{-1}
                        = (s^2 - 2 p0 s + |p|^2)^{-1} [X pbar - s X]

    ``resq`` (the pure Q-form), and ``gen_left_m`` / ``gen_right_m``.
    """
    s, p = Quaternion.coerce(s), Quaternion.coerce(p)
    if in_sphere(s, p, 1e-10 * max(1.0, s.norm())):
        raise PoleError("the resolvent equations need s outside [p]")
    Qs, Qp = qcs_T_inv(s, T), qcs_T_inv(p, T)
    SLs, SLp = s_resolvent_left(s, T), s_resolvent_left(p, T)
    SRs = s_resolvent_right(s, T)
    Tb = T.Tbar
    sb = s.conj()
    K = (p * p - 2.0 * s.w * p + s.norm2()).inverse()
    out: dict[str, float] = {}

    D = SRs - SLp
    out["s_resolvent"] = (SRs * SLp - (D * p - sb * D) * K).norm()

    X = Qs * SLp - SRs * Qp
    lhs = Qs * Qp
    out["star5"] = (lhs - (X * p - sb * X) * K).norm()
    # mirrored form; the quadratic factor is the one in s, acting from the left
    K6 = (s * s - 2.0 * p.w * s + p.norm2()).inverse()
    out["star6"] = (lhs - K6 * (X * p.conj() - s * X)).norm()

    lhs = s * Qs * Qp * p - s * Qs * Tb * Qp - Qs * Tb * Qp * p + Qs * Tb * Tb * Qp
    Y = s * Qs - p * Qp
    Z = Tb * Qp - Qs * Tb
    rhs = (Y * p - sb * Y) * K + (Z * p - sb * Z) * K
    out["resq"] = (lhs - rhs).norm()

    for m in range(1, m_max + 1):
        ML = sum(((Tb**i) * SLs * (s ** (m - i - 1)) for i in range(m)), QuaternionMatrix.zeros(T.n))
        MR = sum(((s ** (m - i - 1)) * SRs * (Tb**i) for i in range(m)), QuaternionMatrix.zeros(T.n))
        out[f"gen_left_{m}"] = (Qs * s**m - (Tb**m) * Qs - ML).norm()
        out[f"gen_right_{m}"] = (s**m * Qs - Qs * (Tb**m) - MR).norm()
    return out


# product rules --------------------------------------------------------------


def product_rule_residuals(
    f: SliceFunctionSpec,
    g: SliceFunctionSpec,
    T: CommutingTuple,
    domain: SliceCauchyDomain | None = None,
    J=E1,
    N: int = DEFAULT_NODES,
) -> tuple[float, float]:
    """Residuals of the two product rules for intrinsic ``f`` and left ``g``.

    ``gen``:   2[D((.)fg)(T) - Tbar D(fg)(T)]
               = f(T) D((.)g)(T) - f(T) Tbar Dg(T) + D((.)f)(T) g(T) - Df(T) Tbar g(T)
    ``delta``: Delta(fg)(T) = Delta f(T) g(T) + f(T) Delta g(T) - Df(T) Dg(T)
    """
    if not f.is_intrinsic:
        raise HypothesisError("the product rules need an intrinsic first factor")
    if g.sidedness == "right":
        raise HypothesisError("the product rules are stated for left functions g")
    domain = default_domain(T) if domain is None else domain
    fg = f.times(g)
    check_enclosed(T, domain)
    C = discretize(domain, J, N)
    # every term reuses the same three resolvent families on the same nodes
    kernels = {
        kind: dict(zip(C.nodes, (fn(s, T) for s in C.nodes)))
        for kind, fn in (("S", s_resolvent_left), ("D", qcs_T_inv), ("L", f_resolvent_left))
    }
    factor = {"S": 1.0 / (2.0 * math.pi), "D": -1.0 / math.pi, "L": 1.0 / (2.0 * math.pi)}

    def calc(kind, h):
        return sandwich_integrate(kernels[kind].__getitem__, C, h) * factor[kind]

    def S(h):
        return calc("S", h)

    def D(h):
        return calc("D", h)

    def L(h):
        return calc("L", h)

    Tb = T.Tbar
    fT, gT = S(f), S(g)
    Df, Dg = D(f), D(g)
    lhs = 2.0 * (D(fg.times_identity()) - Tb * D(fg))
    rhs = fT * D(g.times_identity()) - fT * Tb * Dg + D(f.times_identity()) * gT - Df * Tb * gT
    gen = (lhs - rhs).norm()
    delta = (L(fg) - (L(f) * gT + fT * L(g) - Df * Dg)).norm()
    return gen, delta


# vanishing integral and the auxiliary lemma ---------------------------------


def vanishing_integral_check(T: CommutingTuple, domain: SliceCauchyDomain, J=E1, N: int = DEFAULT_NODES,
                             margin: float = POLE_MARGIN) -> tuple[float, float]:
    """``|| int Q_{c,s}(T)^{-1} ds_J ||`` and ``|| int Q_{c,s}(T)^{-1} ds_J s ||``."""
    require_riesz_hypotheses(T)
    check_pole_margin(domain, s_spectrum(T).slice_points(), margin)
    C = discretize(domain, J, N)
    r0 = sandwich_integrate(lambda s: qcs_T_inv(s, T), C, None)
    r1 = sandwich_integrate(lambda s: qcs_T_inv(s, T), C, lambda s: s)
    return r0.norm(), r1.norm()


def lemma_app_check(f: SliceFunctionSpec, B: QuaternionMatrix, p, domain: SliceCauchyDomain, J=E1,
                    N: int = DEFAULT_NODES, margin: float = POLE_MARGIN) -> float:
    """``|| (1/2pi) int f(s) ds_J (sbar B - B p)(p^2 - 2 s0 p + |s|^2)^{-1} - B f(p) ||``."""
    if not f.is_intrinsic:
        raise HypothesisError("the lemma needs an intrinsic function")
    p = Quaternion.coerce(p)
    if not domain.contains_quaternion(p):
        raise DomainError(f"{p} is not inside the domain")
    zp = complex(p.w, p.imag_norm())
    check_pole_margin(domain, [zp, zp.conjugate()], margin)
    C = discretize(domain, J, N)

    def right(s):
        K = (p * p - 2.0 * s.w * p + s.norm2()).inverse()
        return (s.conj() * B - B * p) * K

    val = sandwich_integrate(f, C, right) * (1.0 / (2.0 * math.pi))
    return (val - B * f(p)).norm()


