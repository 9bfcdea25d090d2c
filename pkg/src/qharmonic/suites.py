"""Named verification suites producing deterministic reports.

Each suite draws its random data from ``numpy.random.default_rng([seed, crc32(name)])``
so the same (suite, seed, nodes) always produces the same residuals, and the
``all`` suite is exactly the union of the individual ones.

Checks flagged ``quadrature`` are built so that the nearest singularity sits at about
0.7 of the contour radius.  The trapezoidal error then decays like ``0.7^N``:
large enough at small ``N`` to show convergence, and far below every
tolerance at the default ``N = 128``.  Checks flagged ``discrete_exact`` use
quadrature too, but the trapezoidal sums satisfy them exactly (independence
of J, node symmetry, commutation at each node), so they sit at round-off for
every ``N``.
"""

from __future__ import annotations

import json
import math
import time
import zlib
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .calculus import (
    CalculusRequest,
    default_domain,
    f_calculus,
    f_calculus_series,
    lemma_app_check,
    moment_H,
    moment_H_direct,
    moment_Q,
    moment_Q_direct,
    product_rule_residuals,
    q_calculus,
    q_calculus_series,
    q_resolvent_residuals,
    riesz_projector,
    s_calculus,
    s_calculus_series,
    vanishing_integral_check,
)
from .contour import DEFAULT_NODES, SliceCauchyDomain, SpherePair, cauchy_eval, harmonic_eval
from .errors import ConfigError
from .func import H_SECOND, SliceFunctionSpec, axial_decompose, fueter_analytic, vekua_residual
from .kernels import comm_pseudo_kernel, geometric_rate, kernel_identity_residuals, kernel_series, q_series_terms, s_kernel_left
from .qmatrix import (
    CommutingTuple,
    QuaternionMatrix,
    pseudo_resolvent_series,
    qcs_T_inv,
    random_commuting_tuple,
    s_spectrum,
    spherical_tuple,
)
from .quat import E1, Quaternion, UnitImaginary, random_quaternion, random_unit, sphere_distance

__all__ = ["SuiteConfig", "Check", "SuiteReport", "SUITES", "run_suite", "convergence_rows", "SWEEP_NODES"]

SWEEP_NODES = (32, 64, 128, 256)
RATIO = 0.7  # singularity radius / contour radius for quadrature checks


@dataclass(frozen=True)
class SuiteConfig:
    nodes: int = DEFAULT_NODES
    tol_scale: float = 1.0
    seed: int = 0
    dim: int | None = None
    unit: UnitImaginary = E1
    tuple: CommutingTuple | None = None
    points: int = 10
    pairs: int = 5

    def __post_init__(self):
        if self.nodes < 16 or self.nodes % 2:
            raise ConfigError("nodes must be an even integer >= 16")
        if not (self.tol_scale > 0 and math.isfinite(self.tol_scale)):
            raise ConfigError("tol-scale must be a positive number")
        if self.dim is not None and not 1 <= self.dim <= 8:
            raise ConfigError("dim must be between 1 and 8")
        if self.points < 1 or self.pairs < 1:
            raise ConfigError("points and pairs must be positive")
        object.__setattr__(self, "unit", UnitImaginary.of(self.unit))


@dataclass(frozen=True)
class Check:
    name: str
    paper_ref: str
    residual: float
    tol: float
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)

    @property
    def quadrature(self) -> bool:
        return bool(self.params.get("quadrature", False))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "paper_ref": self.paper_ref,
            "residual": float(self.residual),
            "tol": float(self.tol),
            "pass": self.passed,
            "params": self.params,
        }


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    nodes: int
    checks: tuple[Check, ...]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def residuals(self, quadrature_only: bool = False) -> dict[str, float]:
        return {c.name: c.residual for c in self.checks if c.quadrature or not quadrature_only}

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "nodes": self.nodes,
            "checks": [c.to_dict() for c in self.checks],
            "elapsed": self.elapsed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class _Collector:
    def __init__(self, suite: str, cfg: SuiteConfig):
        self.suite, self.cfg = suite, cfg
        self.checks: list[Check] = []

    def add(self, name: str, ref: str, residual: float, tol: float, quadrature: bool,
            discrete_exact: bool = False, **params) -> None:
        """``quadrature``: the residual measures trapezoidal error and decays with N.
        ``discrete_exact``: computed by quadrature, but the discrete sums already
        satisfy the identity, so the residual is round-off at every N."""
        params = {"quadrature": quadrature, **params}
        if quadrature or discrete_exact:
            params["N"] = self.cfg.nodes
        if discrete_exact:
            params["discrete_exact"] = True
        self.checks.append(Check(f"{self.suite}.{name}", ref, float(residual), tol * self.cfg.tol_scale, params))


def _rng(cfg: SuiteConfig, name: str) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, zlib.crc32(name.encode())])


def _dims(cfg: SuiteConfig, default: tuple[int, ...]) -> tuple[int, ...]:
    return (cfg.dim,) if cfg.dim is not None else default


def _tuples(cfg: SuiteConfig, rng: np.random.Generator, default: tuple[int, ...]) -> list[tuple[str, CommutingTuple]]:
    if cfg.tuple is not None:
        return [("user", cfg.tuple)]
    return [(f"n{n}", random_commuting_tuple(n, rng)) for n in _dims(cfg, default)]


def _rel(a, b) -> float:
    return (a - b).norm() / max(1.0, b.norm())


def _with_modulus(rng: np.random.Generator, modulus: float) -> Quaternion:
    q = random_quaternion(rng)
    return q * (modulus / q.norm())


# suites ---------------------------------------------------------------------

KERNEL_CHECKS = {
    "form_left": (1e-13, "S_L^{-1}: form I equals form II"),
    "form_right": (1e-13, "S_R^{-1}: form I equals form II"),
    "dsl_closed": (1e-12, "closed form D S_L^{-1} = -2 Q_{c,s}^{-1}"),
    "fueter_sl": (1e-4, "D S_L^{-1}(s,q) = -2 Q_{c,s}(q)^{-1}"),
    "fueter_sr": (1e-4, "S_R^{-1}(s,q) D = -2 Q_{c,s}(q)^{-1}"),
    "laplace_sl_rel": (1e-3, "Delta S_L^{-1}(s,q) = F_L(s,q)"),
    "laplace_sr_rel": (1e-3, "Delta S_R^{-1}(s,q) = F_R(s,q)"),
    "fueter2_sl_rel": (1e-3, "D^2 S_L^{-1}(s,q) = F_L(s,qbar)"),
    "laplace2_q": (1e-4, "Delta_2 Q_{c,s}(q)^{-1} = 4 Q_{c,s}(q)^{-2}"),
    "harmonic_dsl": (1e-4, "Delta D S_L^{-1}(s,q) = 0"),
    "cauchy_riemann_s": (1e-4, "Q_{c,s}(q)^{-1} is slice holomorphic in s"),
    "slice_derivative_q": (1e-4, "(du + J dv) Q_{c,s}(u+Jv)^{-1} = -F_L(s,qbar)/2"),
}


def suite_kernels(c: _Collector, rng: np.random.Generator) -> None:
    i = 0
    while i < c.cfg.points:
        s = Quaternion.from_array(rng.uniform(-2.0, 2.0, 4))
        q = Quaternion.from_array(rng.uniform(-2.0, 2.0, 4))
        if sphere_distance(q, s) < 0.1:
            continue
        res = kernel_identity_residuals(s, q)
        for key, (tol, ref) in KERNEL_CHECKS.items():
            c.add(f"{key}[{i:02d}]", ref, res[key], tol, False)
        i += 1


def suite_series(c: _Collector, rng: np.random.Generator) -> None:
    for i, ratio in enumerate((0.3, 0.5, 0.7)):
        s = _with_modulus(rng, rng.uniform(1.0, 2.0))
        q = _with_modulus(rng, ratio * s.norm())
        ks = kernel_series(s, q, 80)
        c.add(f"q_series[{i}]", "Q_{c,s}(q)^{-1} = sum_m P_m(q) s^{-1-m}, |q| < |s|",
              _rel(ks.q_comm, comm_pseudo_kernel(s, q)), 1e-10, False, ratio=ratio)
        c.add(f"s_series[{i}]", "S_L^{-1}(s,q) = sum_m q^m s^{-1-m}, |q| < |s|",
              _rel(ks.s_left, s_kernel_left(s, q)), 1e-10, False, ratio=ratio)
        rate = geometric_rate(q_series_terms(s, q, 80), 0.0, math.inf)
        c.add(f"q_series_rate[{i}]", "geometric convergence of the Q-series at rate |q|/|s|",
              abs(rate / ratio - 1.0), 0.1, False, ratio=ratio)
    for label, T in _tuples(c.cfg, rng, (2, 3)):
        s = _with_modulus(rng, T.norm() / RATIO)
        c.add(f"q_series_operator[{label}]", "Q_{c,s}(T)^{-1} = sum_m P_m(T) s^{-1-m}, ||T|| < |s|",
              _rel(pseudo_resolvent_series(s, T, 80), qcs_T_inv(s, T)), 1e-10, False, ratio=RATIO)


def suite_scalar(c: _Collector, rng: np.random.Generator) -> None:
    R, N, J = 2.0, c.cfg.nodes, c.cfg.unit
    D = SliceCauchyDomain.disk(R)
    D2 = SliceCauchyDomain.disk(1.03 * R)
    ref = "D f(q) = -(1/pi) int Q_{c,s}(q)^{-1} ds_J f(s)"
    for m in (2, 3, 4):
        f = SliceFunctionSpec.monomial(m)
        exact = fueter_analytic(f)
        for i in range(4):
            q = _with_modulus(rng, R * rng.uniform(0.68, 0.72))
            val = harmonic_eval(f, q, D, J, N)
            c.add(f"harmonic_q{m}[{i}]", ref, _rel(val, exact(q)), 1e-8, True)
            J2 = random_unit(rng)
            c.add(f"unit_sweep_q{m}[{i}]", "integral representation independent of J",
                  (val - harmonic_eval(f, q, D, J2, N)).norm(), 1e-8, False, True)
            c.add(f"radius_sweep_q{m}[{i}]", "integral representation independent of the domain",
                  (val - harmonic_eval(f, q, D2, J, N)).norm(), 1e-8, True)
            c.add(f"cauchy_q{m}[{i}]", "slice Cauchy formula f(q) = (1/2pi) int S_L^{-1} ds_J f",
                  _rel(cauchy_eval(f, q, D, J, N), f(q)), 1e-8, True)


def _random_poly(rng: np.random.Generator, degree: int, side: str = "left") -> SliceFunctionSpec:
    coeffs = [random_quaternion(rng) * (0.5 ** k) for k in range(degree + 1)]
    return SliceFunctionSpec(tuple(coeffs), side)


def suite_calculus(c: _Collector, rng: np.random.Generator) -> None:
    N, J = c.cfg.nodes, c.cfg.unit
    for label, T in _tuples(c.cfg, rng, (1, 2, 3, 4)):
        D = default_domain(T)
        D2 = SliceCauchyDomain.disk(1.03 * D.max_modulus())
        f = _random_poly(rng, 6)
        fr = SliceFunctionSpec.right(f.coefficients)
        req, reqr = CalculusRequest(f, T, D, J, N), CalculusRequest(fr, T, D, J, N)
        Df = q_calculus(req)
        pairs = [
            ("q_series", Df, q_calculus_series(f, T), "harmonic calculus equals -2 sum P_m(T) a_m"),
            ("s_series", s_calculus(req), s_calculus_series(f, T), "S-calculus equals sum T^m a_m"),
            ("f_series", f_calculus(req), f_calculus_series(f, T), "F-calculus equals sum -2(m-1)m Q_{m-2}(T) a_m"),
            ("q_series_right", q_calculus(reqr), q_calculus_series(fr, T), "right harmonic calculus equals -2 sum a_m P_m(T)"),
            ("s_series_right", s_calculus(reqr), s_calculus_series(fr, T), "right S-calculus equals sum a_m T^m"),
            ("f_series_right", f_calculus(reqr), f_calculus_series(fr, T), "right F-calculus equals its series"),
        ]
        for name, a, b, ref in pairs:
            c.add(f"{name}[{label}]", ref, (a - b).norm(), 1e-8, True)
        ident = q_calculus(CalculusRequest(SliceFunctionSpec.monomial(1), T, D, J, N))
        c.add(f"identity[{label}]", "D applied to f(q) = q gives -2I",
              (ident + 2.0 * QuaternionMatrix.identity(T.n)).norm(), 1e-8, True)
        const = q_calculus(CalculusRequest(SliceFunctionSpec.left([random_quaternion(rng)]), T, D, J, N))
        c.add(f"constant[{label}]", "D applied to a constant gives 0", const.norm(), 1e-9, True)
        shifted = q_calculus(CalculusRequest(f.shifted(random_quaternion(rng)), T, D, J, N))
        c.add(f"constancy[{label}]", "D f(T) = D g(T) when f - g is constant", (Df - shifted).norm(), 1e-9, True)
        other_J = q_calculus(CalculusRequest(f, T, D, random_unit(rng), N))
        c.add(f"unit_sweep[{label}]", "calculus independent of the imaginary unit", (Df - other_J).norm(), 1e-8, False, True)
        other_D = q_calculus(CalculusRequest(f, T, D2, J, N))
        c.add(f"domain_sweep[{label}]", "calculus independent of the enclosing domain", (Df - other_D).norm(), 1e-8, True)


def suite_moments(c: _Collector, rng: np.random.Generator) -> None:
    N, J = c.cfg.nodes, c.cfg.unit
    for label, T in _tuples(c.cfg, rng, (2,)):
        D = default_domain(T)
        for m in range(5):
            c.add(f"H[{label},m={m}]", "H_m(T) = (1/2pi) int Q_{c,s}(T)^{-1} ds_J s^{m+1} = sum T^{m-k} Tbar^k",
                  (moment_H(T, m, D, J, N) - moment_H_direct(T, m)).norm(), 1e-9, True)
            QL = moment_Q(T, m, D, J, N)
            c.add(f"Q[{label},m={m}]", "Q_m(T) = -1/(4pi(m+1)(m+2)) int F_L ds_J s^{m+2}",
                  (QL - moment_Q_direct(T, m)).norm(), 1e-9, True)
            c.add(f"Q_sides[{label},m={m}]", "left and right integral forms of Q_m(T) agree",
                  (QL - moment_Q(T, m, D, J, N, side="right")).norm(), 1e-11, False, True)


RESOLVENT_REFS = {
    "s_resolvent": "S-resolvent equation",
    "star5": "Q_{c,s}Q_{c,p} = [X p - sbar X](p^2 - 2 s0 p + |s|^2)^{-1}",
    "star6": "Q_{c,s}Q_{c,p} = (s^2 - 2 p0 s + |p|^2)^{-1}[X pbar - s X]",
    "resq": "Q-resolvent equation in terms of Q_{c,s}, Q_{c,p} and Tbar only",
}


def _resolvent_points(T: CommutingTuple, rng: np.random.Generator, count: int, gap: float = 0.2):
    spheres = [pt.sphere for pt in s_spectrum(T).points]
    out = []
    while len(out) < count:
        s, p = random_quaternion(rng, 1.5), random_quaternion(rng, 1.5)
        if min(sphere_distance(x, sph) for x in (s, p) for sph in spheres) < gap:
            continue
        if sphere_distance(s, p) < gap:
            continue
        out.append((s, p))
    return out


def suite_resolvent(c: _Collector, rng: np.random.Generator) -> None:
    for label, T in _tuples(c.cfg, rng, (1, 2, 3, 4)):
        for i, (s, p) in enumerate(_resolvent_points(T, rng, c.cfg.pairs)):
            for key, val in q_resolvent_residuals(T, s, p).items():
                ref = RESOLVENT_REFS.get(key) or (
                    f"generalized Q-resolvent equation, {key.split('_')[1]} form, m = {key.split('_')[2]}"
                )
                c.add(f"{key}[{label},{i}]", ref, val, 1e-10, False)


def _riesz_family(rng: np.random.Generator):
    yield "diag", spherical_tuple([1.0, 2.0])
    yield "rotated2", spherical_tuple([1.0, 2.0], rng)
    yield "rotated3", spherical_tuple([2.0, 1.0, 1.0], rng)


def _eigen_projector(T: CommutingTuple, radius: float) -> QuaternionMatrix:
    """Independent oracle: spectral projector of the symmetric ``C`` onto eigenvalue ``radius^2``."""
    w, V = np.linalg.eigh(T.C)
    Vk = V[:, np.abs(w - radius**2) < 1e-8]
    return QuaternionMatrix.from_components(Vk @ Vk.T)


def suite_riesz(c: _Collector, rng: np.random.Generator) -> None:
    inner = SliceCauchyDomain((SpherePair(0.0, 1.0, 0.68),))
    outer = SliceCauchyDomain((SpherePair(0.0, 1.0, 0.72),))
    ref = "Riesz projector (1/2pi) int s ds_J Q_{c,s}(T)^{-1}"
    for label, T in _riesz_family(rng):
        P, d = riesz_projector(T, inner, outer, c.cfg.unit, c.cfg.nodes)
        c.add(f"idempotency[{label}]", ref + " is a projection", d.idempotency, 1e-8, True)
        c.add(f"commutation[{label}]", ref + " commutes with T", d.commutation, 1e-8, False, True)
        c.add(f"f_variant[{label}]", "F-calculus form of the projector coincides", d.f_variant, 1e-8, True)
        c.add(f"inner_outer[{label}]", "projector integrals over nested domains coincide", d.inner_outer, 1e-8, True)
        c.add(f"oracle[{label}]", "projector equals the eigenprojector of the enclosed sphere",
              (P - _eigen_projector(T, 1.0)).norm(), 1e-9, True)


def suite_vanishing(c: _Collector, rng: np.random.Generator) -> None:
    J, N = c.cfg.unit, c.cfg.nodes
    ref = "int Q_{c,s}(T)^{-1} ds_J = 0 for T0 = 0 and real component spectra"
    for label, T in _riesz_family(rng):
        rho = s_spectrum(T).radius()
        enclosing = SliceCauchyDomain.disk(rho / RATIO)
        r0, _ = vanishing_integral_check(T, enclosing, J, N)
        c.add(f"enclosing[{label}]", ref, r0, 1e-10, False, True)
        lo = min(abs(z) for z in s_spectrum(T).slice_points())
        centre = 4.0
        outside = SliceCauchyDomain.disk(RATIO * math.hypot(centre, lo), centre)
        r0, r1 = vanishing_integral_check(T, outside, J, N)
        c.add(f"outside[{label}]", ref, r0, 1e-10, True)
        c.add(f"outside_weighted[{label}]", "int Q_{c,s}(T)^{-1} ds_J s = 0 without enclosed spectrum", r1, 1e-10, True)


def suite_lemma(c: _Collector, rng: np.random.Generator) -> None:
    R = 2.0
    D = SliceCauchyDomain.disk(R)
    ref = "(1/2pi) int f(s) ds_J (sbar B - B p)(p^2 - 2 s0 p + |s|^2)^{-1} = B f(p)"
    for k, coeffs in enumerate(([1.0], [0.0, 0.0, 1.0], [0.0, 2.0, 0.0, 1.0])):
        f = SliceFunctionSpec.intrinsic(coeffs)
        B = QuaternionMatrix(rng.standard_normal((4, 2, 2)))
        p = _with_modulus(rng, RATIO * R)
        c.add(f"lemma[{k}]", ref, lemma_app_check(f, B, p, D, c.cfg.unit, c.cfg.nodes), 1e-9, True)


PRODUCT_PAIRS = (
    ("q2_q", SliceFunctionSpec.intrinsic([0.0, 0.0, 1.0]), SliceFunctionSpec.left([0.0, 1.0])),
    ("q2p1_q2", SliceFunctionSpec.intrinsic([1.0, 0.0, 1.0]), SliceFunctionSpec.left([0.0, 0.0, 1.0])),
    ("q3_qe1", SliceFunctionSpec.intrinsic([0.0, 0.0, 0.0, 1.0]), SliceFunctionSpec.left([E1, 1.0])),
)


def suite_product(c: _Collector, rng: np.random.Generator) -> None:
    for label, T in _tuples(c.cfg, rng, (2, 3)):
        for name, f, g in PRODUCT_PAIRS:
            gen, delta = product_rule_residuals(f, g, T, None, c.cfg.unit, c.cfg.nodes)
            c.add(f"generalized[{label},{name}]", "generalized product rule for the harmonic calculus", gen, 1e-8, True)
            c.add(f"laplace[{label},{name}]", "Delta(fg)(T) = Delta f(T) g(T) + f(T) Delta g(T) - Df(T) Dg(T)",
                  delta, 1e-8, True)


def vekua_grid(h: float, center: tuple[float, float] = (0.4, 0.7), half: int = 3):
    k = np.arange(-half, half + 1)
    return center[0] + h * k, center[1] + h * k


def suite_vekua(c: _Collector, rng: np.random.Generator) -> None:
    q0, r = vekua_grid(H_SECOND)
    for m in (2, 4):
        samples = axial_decompose(fueter_analytic(SliceFunctionSpec.monomial(m)), q0, r, c.cfg.unit)
        ra, rb = vekua_residual(samples)
        c.add(f"A[q{m}]", "A_00 + A_rr + (2/r) A_r = 0 for D f = A + J B", ra, 1e-5, False, h=H_SECOND)
        c.add(f"B[q{m}]", "B_00 + B_rr + (2 r B_r - 2 B)/r^2 = 0 for D f = A + J B", rb, 1e-5, False, h=H_SECOND)


SUITES: dict[str, Callable[[_Collector, np.random.Generator], None]] = {
    "kernels": suite_kernels,
    "series": suite_series,
    "scalar": suite_scalar,
    "calculus": suite_calculus,
    "moments": suite_moments,
    "resolvent": suite_resolvent,
    "riesz": suite_riesz,
    "vanishing": suite_vanishing,
    "lemma": suite_lemma,
    "product": suite_product,
    "vekua": suite_vekua,
}


def run_suite(name: str, config: SuiteConfig | None = None) -> SuiteReport:
    """Run one suite (or ``all``) and return its report with checks sorted by name."""
    cfg = config or SuiteConfig()
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}")
    t0 = time.perf_counter()
    checks: list[Check] = []
    for n in names:
        col = _Collector(n, cfg)
        SUITES[n](col, _rng(cfg, n))
        checks.extend(col.checks)
    checks.sort(key=lambda ch: ch.name)
    return SuiteReport(name, cfg.seed, cfg.nodes, tuple(checks), time.perf_counter() - t0)


def convergence_rows(name: str, config: SuiteConfig | None = None, nodes=SWEEP_NODES) -> list[tuple[str, str, int, float]]:
    """``(suite, check, N, residual)`` rows for every check at each node count."""
    cfg = config or SuiteConfig()
    rows = []
    for N in nodes:
        rep = run_suite(name, replace(cfg, nodes=N))
        rows.extend((ch.name.split(".", 1)[0], ch.name, N, ch.residual) for ch in rep.checks)
    return rows
