"""Quaternionic matrices, commuting operator tuples and their S-spectrum.

A :class:`QuaternionMatrix` stores its four real component matrices in one
``(4, n, n)`` array.  Inversion goes through the complex adjoint

    chi(A + B e2) = [[A, B], [-conj(B), conj(A)]],   A = M0 + i M1,  B = M2 + i M3,

which is multiplicative, so ``chi(M)^{-1} = chi(M^{-1})``.

A :class:`CommutingTuple` holds real commuting matrices ``T0..T3`` and
represents ``T = T0 + T1 e1 + T2 e2 + T3 e3``.  For ``s`` in a slice ``C_J``
the matrix ``Q_{c,s}(T) = s^2 - 2 s T0 + sum Ti^2`` has all entries in
``C_J``, so its inverse is an ordinary complex solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Real
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from .errors import (
    DimensionError,
    DivergenceError,
    NearSingularError,
    NonCommutingError,
    ResolventPoleError,
)
from .quat import Quaternion, Sphere, hamilton, unit_of

__all__ = [
    "QuaternionMatrix",
    "CommutingTuple",
    "SpectralPoint",
    "SSpectrum",
    "qm_inverse",
    "qcs_T",
    "qcs_T_inv",
    "s_resolvent_left",
    "s_resolvent_right",
    "f_resolvent_left",
    "f_resolvent_right",
    "pseudo_resolvent_series",
    "s_resolvent_series",
    "power_sums",
    "s_spectrum",
    "random_commuting_tuple",
    "spherical_tuple",
    "parse_matrix",
    "format_matrix",
    "read_tuple",
    "write_tuple",
    "COND_LIMIT",
    "COMMUTE_TOL",
]

COND_LIMIT = 1e12
COMMUTE_TOL = 1e-10
CLUSTER_RTOL = 1e-6
CERTIFY_RTOL = 1e-8


def _is_scalar(v) -> bool:
    return isinstance(v, Real) and not isinstance(v, bool)


class QuaternionMatrix:
    """Immutable ``n x n`` matrix with quaternion entries.

    ``*`` (and ``@``) is the matrix product.  Quaternion or real scalars act
    entrywise on the side where they are written; adding a scalar adds that
    multiple of the identity.
    """

    __slots__ = ("c",)
    __array_ufunc__ = None

    def __init__(self, components):
        c = np.array(components, dtype=float)
        if c.ndim != 3 or c.shape[0] != 4 or c.shape[1] != c.shape[2]:
            raise DimensionError(f"expected (4, n, n) components, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("QuaternionMatrix is immutable")

    # constructors ---------------------------------------------------------

    @classmethod
    def from_components(cls, w, x=None, y=None, z=None) -> QuaternionMatrix:
        w = np.asarray(w, dtype=float)
        zero = np.zeros_like(w)
        return cls(np.stack([w] + [zero if a is None else np.asarray(a, float) for a in (x, y, z)]))

    @classmethod
    def identity(cls, n: int) -> QuaternionMatrix:
        return cls.from_components(np.eye(n))

    @classmethod
    def zeros(cls, n: int) -> QuaternionMatrix:
        return cls(np.zeros((4, n, n)))

    @classmethod
    def scalar(cls, q, n: int) -> QuaternionMatrix:
        """``q I``."""
        q = Quaternion.coerce(q)
        return cls(q.array[:, None, None] * np.eye(n))

    @classmethod
    def diag(cls, entries: Iterable) -> QuaternionMatrix:
        qs = [Quaternion.coerce(e) for e in entries]
        c = np.zeros((4, len(qs), len(qs)))
        for k, q in enumerate(qs):
            c[:, k, k] = q.array
        return cls(c)

    @classmethod
    def from_entries(cls, rows) -> QuaternionMatrix:
        rows = [[Quaternion.coerce(e) for e in row] for row in rows]
        return cls(np.moveaxis(np.array([[e.array for e in row] for row in rows]), -1, 0))

    @classmethod
    def from_slice(cls, Z, J) -> QuaternionMatrix:
        """Embed a complex matrix ``X + iY`` as ``X + J Y``."""
        Z = np.asarray(Z, dtype=complex)
        Jv = Quaternion.coerce(J)
        return cls(np.stack([Z.real, Jv.x * Z.imag, Jv.y * Z.imag, Jv.z * Z.imag]))

    @classmethod
    def from_adjoint(cls, X) -> QuaternionMatrix:
        X = np.asarray(X)
        n = X.shape[0] // 2
        A, B = X[:n, :n], X[:n, n:]
        return cls(np.stack([A.real, A.imag, B.real, B.imag]))

    # structure ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.c.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.c.shape[1:]

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion.from_array(self.c[:, i, j])

    def conj(self) -> QuaternionMatrix:
        """Entrywise quaternion conjugate (no transpose)."""
        return QuaternionMatrix(self.c * np.array([1.0, -1.0, -1.0, -1.0])[:, None, None])

    def adjoint(self) -> np.ndarray:
        """Complex adjoint matrix ``chi(M)`` of size ``2n x 2n``."""
        A = self.c[0] + 1j * self.c[1]
        B = self.c[2] + 1j * self.c[3]
        return np.block([[A, B], [-B.conj(), A.conj()]])

    def norm(self) -> float:
        """Operator norm on ``H^n``: largest singular value of ``chi(M)``."""
        return float(np.linalg.norm(self.adjoint(), 2))

    def max_abs(self) -> float:
        """Largest entry modulus."""
        return float(np.sqrt((self.c**2).sum(axis=0)).max())

    def cond(self) -> float:
        return float(np.linalg.cond(self.adjoint()))

    def is_real(self, tol: float = 0.0) -> bool:
        return float(np.abs(self.c[1:]).max(initial=0.0)) <= tol

    def inverse(self) -> QuaternionMatrix:
        return qm_inverse(self)

    def allclose(self, other, tol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= tol

    def __repr__(self) -> str:
        return f"QuaternionMatrix(n={self.n}, components=\n{self.c!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, QuaternionMatrix) and np.array_equal(self.c, other.c)

    __hash__ = None

    # arithmetic -----------------------------------------------------------

    def _check(self, o: QuaternionMatrix) -> None:
        if o.shape != self.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {o.shape}")

    def _as_matrix(self, o):
        if isinstance(o, QuaternionMatrix):
            self._check(o)
            return o
        if isinstance(o, Quaternion) or _is_scalar(o):
            return QuaternionMatrix.scalar(o, self.n)
        return None

    def __add__(self, o):
        m = self._as_matrix(o)
        return NotImplemented if m is None else QuaternionMatrix(self.c + m.c)

    __radd__ = __add__

    def __sub__(self, o):
        m = self._as_matrix(o)
        return NotImplemented if m is None else QuaternionMatrix(self.c - m.c)

    def __rsub__(self, o):
        m = self._as_matrix(o)
        return NotImplemented if m is None else QuaternionMatrix(m.c - self.c)

    def __neg__(self):
        return QuaternionMatrix(-self.c)

    def __mul__(self, o):
        if isinstance(o, QuaternionMatrix):
            self._check(o)
            return QuaternionMatrix(hamilton(self.c, o.c, np.matmul))
        if isinstance(o, Quaternion):
            return QuaternionMatrix(hamilton(self.c, o.array[:, None, None]))
        if _is_scalar(o):
            return QuaternionMatrix(self.c * float(o))
        return NotImplemented

    def __rmul__(self, o):
        if isinstance(o, Quaternion):
            return QuaternionMatrix(hamilton(o.array[:, None, None], self.c))
        if _is_scalar(o):
            return QuaternionMatrix(float(o) * self.c)
        return NotImplemented

    __matmul__ = __mul__

    def __pow__(self, m: int):
        if not isinstance(m, (int, np.integer)) or m < 0:
            return NotImplemented
        out, base = QuaternionMatrix.identity(self.n), self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out


def qm_inverse(M: QuaternionMatrix, return_cond: bool = False):
    """Inverse through the complex adjoint; refuses when ``cond(chi(M)) > 1e12``."""
    X = M.adjoint()
    cond = float(np.linalg.cond(X))
    if not math.isfinite(cond) or cond > COND_LIMIT:
        raise NearSingularError(f"condition number {cond:.3g} exceeds {COND_LIMIT:.0e}")
    inv = QuaternionMatrix.from_adjoint(np.linalg.inv(X))
    return (inv, cond) if return_cond else inv


# commuting tuples -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CommutingTuple:
    """Pairwise commuting real matrices ``(T0, T1, T2, T3)``."""

    T0: np.ndarray
    T1: np.ndarray
    T2: np.ndarray
    T3: np.ndarray
    commutation_residual: float = field(init=False)

    def __post_init__(self):
        mats = [np.array(t, dtype=float, ndmin=2) for t in (self.T0, self.T1, self.T2, self.T3)]
        n = mats[0].shape[0]
        for t in mats:
            if t.shape != (n, n):
                raise DimensionError("components must be square matrices of equal size")
            t.setflags(write=False)
        res = 0.0
        for i in range(4):
            for j in range(i + 1, 4):
                res = max(res, float(np.abs(mats[i] @ mats[j] - mats[j] @ mats[i]).max()))
        if res >= COMMUTE_TOL:
            raise NonCommutingError(f"components do not commute (residual {res:.3g})")
        for name, t in zip(("T0", "T1", "T2", "T3"), mats):
            object.__setattr__(self, name, t)
        object.__setattr__(self, "commutation_residual", res)

    @classmethod
    def from_matrix(cls, M: QuaternionMatrix) -> CommutingTuple:
        return cls(*M.c)

    @classmethod
    def diagonal(cls, entries: Iterable) -> CommutingTuple:
        """Tuple whose ``T = diag(q_1, ..., q_n)``."""
        return cls.from_matrix(QuaternionMatrix.diag(entries))

    @property
    def n(self) -> int:
        return self.T0.shape[0]

    @property
    def components(self) -> tuple[np.ndarray, ...]:
        return (self.T0, self.T1, self.T2, self.T3)

    @property
    def T(self) -> QuaternionMatrix:
        return QuaternionMatrix(np.stack(self.components))

    @property
    def Tbar(self) -> QuaternionMatrix:
        return QuaternionMatrix(np.stack([self.T0, -self.T1, -self.T2, -self.T3]))

    @property
    def B(self) -> np.ndarray:
        """``T + Tbar = 2 T0``."""
        return 2.0 * self.T0

    @property
    def C(self) -> np.ndarray:
        """``T Tbar = T0^2 + T1^2 + T2^2 + T3^2`` (real by commutativity)."""
        return sum(t @ t for t in self.components)

    def norm(self) -> float:
        return self.T.norm()

    def similar(self, P, Pinv=None) -> CommutingTuple:
        """``P Ti P^{-1}`` for every component."""
        P = np.asarray(P, dtype=float)
        Pinv = np.linalg.inv(P) if Pinv is None else Pinv
        return CommutingTuple(*(P @ t @ Pinv for t in self.components))

    def has_zero_real_part(self, tol: float = 1e-12) -> bool:
        return float(np.abs(self.T0).max()) <= tol * max(1.0, self.norm())

    def has_real_component_spectra(self, tol: float = 1e-8) -> bool:
        for t in self.components[1:]:
            ev = np.linalg.eigvals(t)
            if np.any(np.abs(ev.imag) > tol * np.maximum(1.0, np.abs(ev))):
                return False
        return True


def qcs_T(s, T: CommutingTuple) -> QuaternionMatrix:
    """``Q_{c,s}(T) = s^2 I - 2 s T0 + sum Ti^2``."""
    s = Quaternion.coerce(s)
    s2 = (s * s).array
    c = s2[:, None, None] * np.eye(T.n) - 2.0 * s.array[:, None, None] * T.T0
    c[0] += T.C
    return QuaternionMatrix(c)


def _slice_z(s: Quaternion) -> complex:
    return complex(s.w, s.imag_norm())


def qcs_T_inv(s, T: CommutingTuple, method: str = "slice") -> QuaternionMatrix:
    """``Q_{c,s}(T)^{-1}`` by an ``n x n`` complex solve in the slice of ``s``.

    ``method='embedding'`` inverts the quaternionic matrix through its complex
    adjoint instead; the two paths are cross-checked in the tests.
    """
    s = Quaternion.coerce(s)
    if method == "embedding":
        try:
            return qm_inverse(qcs_T(s, T))
        except NearSingularError as exc:
            raise ResolventPoleError(str(exc)) from exc
    if method != "slice":
        raise ValueError(f"unknown method {method!r}")
    z = _slice_z(s)
    Z = z * z * np.eye(T.n) - 2.0 * z * T.T0 + T.C
    cond = float(np.linalg.cond(Z))
    if not math.isfinite(cond) or cond > COND_LIMIT:
        raise ResolventPoleError(f"s = {s} is (numerically) in the S-spectrum, cond {cond:.3g}")
    return QuaternionMatrix.from_slice(np.linalg.inv(Z), unit_of(s))


def s_resolvent_left(s, T: CommutingTuple) -> QuaternionMatrix:
    """``S_L^{-1}(s, T) = (s I - Tbar) Q_{c,s}(T)^{-1}``."""
    s = Quaternion.coerce(s)
    return (s - T.Tbar) * qcs_T_inv(s, T)


def s_resolvent_right(s, T: CommutingTuple) -> QuaternionMatrix:
    """``S_R^{-1}(s, T) = Q_{c,s}(T)^{-1} (s I - Tbar)``."""
    s = Quaternion.coerce(s)
    return qcs_T_inv(s, T) * (s - T.Tbar)


def f_resolvent_left(s, T: CommutingTuple) -> QuaternionMatrix:
    """``F_L(s, T) = -4 (s I - Tbar) Q_{c,s}(T)^{-2}``."""
    s = Quaternion.coerce(s)
    Qi = qcs_T_inv(s, T)
    return -4.0 * ((s - T.Tbar) * (Qi * Qi))


def f_resolvent_right(s, T: CommutingTuple) -> QuaternionMatrix:
    """``F_R(s, T) = -4 Q_{c,s}(T)^{-2} (s I - Tbar)``."""
    s = Quaternion.coerce(s)
    Qi = qcs_T_inv(s, T)
    return -4.0 * ((Qi * Qi) * (s - T.Tbar))


def power_sums(T: CommutingTuple, M: int) -> list[QuaternionMatrix]:
    """``P_m = sum_{k=1}^m T^{m-k} Tbar^{k-1}`` for ``m = 0..M`` (``P_0 = 0``).

    Uses ``P_{m+1} = T P_m + Tbar^m``.  Each ``P_m`` is a real matrix.
    """
    A, Ab = T.T, T.Tbar
    out = [QuaternionMatrix.zeros(T.n), QuaternionMatrix.identity(T.n)]
    Ab_pow = QuaternionMatrix.identity(T.n)
    for _ in range(1, M):
        Ab_pow = Ab_pow * Ab
        out.append(A * out[-1] + Ab_pow)
    return out[: M + 1]


def _series_guard(s: Quaternion, T: CommutingTuple) -> None:
    if T.norm() >= s.norm():
        raise DivergenceError(f"series needs ||T|| = {T.norm():.6g} < |s| = {s.norm():.6g}")


def pseudo_resolvent_series(s, T: CommutingTuple, M: int = 80) -> QuaternionMatrix:
    """Partial sum ``sum_{m=1}^M P_m s^{-1-m}`` converging to ``Q_{c,s}(T)^{-1}``."""
    s = Quaternion.coerce(s)
    _series_guard(s, T)
    P = power_sums(T, M)
    sinv = s.inverse()
    spow = sinv * sinv
    acc = QuaternionMatrix.zeros(T.n)
    for m in range(1, M + 1):
        acc = acc + P[m] * spow
        spow = spow * sinv
    return acc


def s_resolvent_series(s, T: CommutingTuple, M: int = 60) -> QuaternionMatrix:
    """Partial sum ``sum_{m=0}^M T^m s^{-1-m}`` of the left S-resolvent."""
    s = Quaternion.coerce(s)
    _series_guard(s, T)
    sinv = s.inverse()
    Tm, spow = QuaternionMatrix.identity(T.n), sinv
    acc = QuaternionMatrix.zeros(T.n)
    for _ in range(M + 1):
        acc = acc + Tm * spow
        Tm, spow = Tm * T.T, spow * sinv
    return acc


# S-spectrum -----------------------------------------------------------------


class SpectralPoint(NamedTuple):
    """A sphere (or real point) of the S-spectrum.

    ``multiplicity`` counts conjugate eigenvalue pairs of the quadratic
    pencil; a real eigenvalue contributes one half.
    """

    sphere: Sphere
    multiplicity: float
    sigma_min: float
    certified: bool

    @property
    def is_real(self) -> bool:
        return self.sphere.radius == 0.0

    def slice_points(self) -> tuple[complex, ...]:
        u, v = self.sphere
        return (complex(u, 0.0),) if v == 0.0 else (complex(u, v), complex(u, -v))


@dataclass(frozen=True)
class SSpectrum:
    spheres: tuple[SpectralPoint, ...]
    real_points: tuple[SpectralPoint, ...]

    @property
    def points(self) -> tuple[SpectralPoint, ...]:
        return self.spheres + self.real_points

    @property
    def total_multiplicity(self) -> float:
        return sum(p.multiplicity for p in self.points)

    @property
    def certified(self) -> bool:
        return all(p.certified for p in self.points)

    def slice_points(self) -> list[complex]:
        """Intersection with a slice, in complex coordinates ``u + iv``."""
        return [z for p in self.points for z in p.slice_points()]

    def radius(self) -> float:
        return max((abs(z) for z in self.slice_points()), default=0.0)


def _clusters(pts: np.ndarray, tol: float) -> list[list[int]]:
    parent = list(range(len(pts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if np.hypot(*(pts[i] - pts[j])) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(pts)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: tuple(pts[g].mean(axis=0)))


def s_spectrum(T: CommutingTuple, cluster_rtol: float = CLUSTER_RTOL) -> SSpectrum:
    """S-spectrum from the eigenvalues of the linearization ``[[0, I], [-C, B]]``.

    Eigenvalues ``u +- iv`` are mapped to ``(u, |v|)``, clustered with relative
    tolerance ``cluster_rtol``, and averaged; averaging restores accuracy for
    defective eigenvalues that the eigensolver splits by ``O(sqrt(eps))``.
    """
    n = T.n
    K = np.block([[np.zeros((n, n)), np.eye(n)], [-T.C, T.B]])
    ev = np.linalg.eigvals(K)
    scale = max(1.0, float(np.abs(ev).max()))
    pts = np.column_stack([ev.real, np.abs(ev.imag)])
    spheres, reals = [], []
    for g in _clusters(pts, cluster_rtol * scale):
        u, v = pts[g].mean(axis=0)
        if v <= cluster_rtol * scale:
            v = 0.0
        s = Quaternion(float(u), float(v))
        Q = qcs_T(s, T).adjoint()
        sv = np.linalg.svd(Q, compute_uv=False)
        smin = float(sv[-1])
        point = SpectralPoint(Sphere(float(u), float(v)), len(g) / 2, smin, bool(smin <= CERTIFY_RTOL * max(1.0, sv[0])))
        (reals if v == 0.0 else spheres).append(point)
    return SSpectrum(tuple(spheres), tuple(reals))


# families -------------------------------------------------------------------


def _basis(n: int, rng: np.random.Generator, orthogonal: bool) -> np.ndarray:
    Qm, R = np.linalg.qr(rng.standard_normal((n, n)))
    Qm = Qm * np.sign(np.diag(R))
    if orthogonal:
        return Qm
    return Qm @ np.diag(rng.uniform(0.7, 1.4, n))


def random_commuting_tuple(
    n: int,
    rng: np.random.Generator,
    *,
    real_spectrum: bool = False,
    zero_real_part: bool = False,
    scale: float = 1.0,
    orthogonal: bool = False,
) -> CommutingTuple:
    """Random commuting tuple ``Ti = P D_i P^{-1}`` with a shared basis ``P``.

    With ``real_spectrum=False`` the ``D_i`` may contain ``2 x 2`` blocks
    ``a I + b R`` (``R`` a quarter rotation), so components can have
    non-real eigenvalues while still commuting.
    """
    P = _basis(n, rng, orthogonal)
    blocks: list[int] = []
    k = 0
    while k < n:
        if not real_spectrum and n - k >= 2 and rng.random() < 0.5:
            blocks.append(2)
            k += 2
        else:
            blocks.append(1)
            k += 1
    comps = []
    for i in range(4):
        D = np.zeros((n, n))
        if not (i == 0 and zero_real_part):
            k = 0
            for b in blocks:
                a = scale * rng.uniform(-1.0, 1.0)
                if b == 1:
                    D[k, k] = a
                else:
                    c = scale * rng.uniform(-0.5, 0.5)
                    D[k : k + 2, k : k + 2] = [[a, -c], [c, a]]
                k += b
        comps.append(P @ D @ np.linalg.inv(P))
    return CommutingTuple(*comps)


def spherical_tuple(radii, rng: np.random.Generator | None = None, *, orthogonal: bool = True) -> CommutingTuple:
    """``T0 = 0`` and symmetric commuting ``T1..T3`` whose spectrum is ``{[J r_k]}``.

    Joint eigenvector ``k`` carries a random direction of length ``radii[k]``;
    without ``rng`` the tuple is ``diag(r_1 e1, ..., r_n e1)``.
    """
    radii = np.asarray(radii, dtype=float)
    n = radii.size
    if rng is None:
        return CommutingTuple.diagonal([Quaternion(0.0, r) for r in radii])
    dirs = rng.standard_normal((n, 3))
    dirs *= (radii / np.linalg.norm(dirs, axis=1))[:, None]
    P = _basis(n, rng, orthogonal)
    Pinv = P.T if orthogonal else np.linalg.inv(P)
    comps = [np.zeros((n, n))] + [P @ np.diag(dirs[:, i]) @ Pinv for i in range(3)]
    return CommutingTuple(*comps)


# text I/O -------------------------------------------------------------------


def parse_matrix(text: str) -> QuaternionMatrix:
    """Parse rows of whitespace-separated ``w,x,y,z`` entries (bare reals allowed)."""
    rows = []
    for line in text.strip().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        row = []
        for tok in line.split():
            parts = [float(p) for p in tok.split(",")]
            if len(parts) == 1:
                parts += [0.0, 0.0, 0.0]
            if len(parts) != 4:
                raise ValueError(f"entry {tok!r} is not a w,x,y,z quadruple")
            row.append(parts)
        rows.append(row)
    if not rows or any(len(r) != len(rows) for r in rows):
        raise DimensionError("matrix text must describe a non-empty square matrix")
    return QuaternionMatrix(np.moveaxis(np.array(rows), -1, 0))


def format_matrix(M: QuaternionMatrix) -> str:
    lines = []
    for i in range(M.n):
        lines.append(" ".join(",".join(repr(float(v)) for v in M.c[:, i, j]) for j in range(M.n)))
    return "\n".join(lines)


def _blocks(text: str) -> list[str]:
    out, cur = [], []
    for line in text.splitlines():
        if line.split("#", 1)[0].strip():
            cur.append(line)
        elif cur:
            out.append("\n".join(cur))
            cur = []
    if cur:
        out.append("\n".join(cur))
    return out


def read_tuple(source) -> CommutingTuple:
    """Read a tuple file: four real blocks ``T0..T3`` or one quaternionic block ``T``."""
    text = Path(source).read_text() if isinstance(source, (str, Path)) and Path(source).exists() else str(source)
    blocks = [parse_matrix(b) for b in _blocks(text)]
    if len(blocks) == 1:
        return CommutingTuple.from_matrix(blocks[0])
    if len(blocks) != 4:
        raise ValueError(f"a tuple needs 1 or 4 blocks, found {len(blocks)}")
    for b in blocks:
        if not b.is_real():
            raise ValueError("component blocks of a tuple must be real")
    return CommutingTuple(*(b.c[0] for b in blocks))


def write_tuple(T: CommutingTuple, path=None) -> str:
    text = "\n\n".join(format_matrix(QuaternionMatrix.from_components(t)) for t in T.components) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
