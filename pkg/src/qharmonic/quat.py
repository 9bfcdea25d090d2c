"""Quaternion scalars, imaginary units and the slice structure of H.

Basis convention: ``e1 e2 = e3``, ``e2 e3 = e1``, ``e3 e1 = e2`` and
``ei^2 = -1``.  A quaternion ``q = w + x e1 + y e2 + z e3`` lies on the
2-sphere ``[q] = {w + J |(x, y, z)| : J in S}`` and, for ``J = J_q``, in the
complex plane ``C_J = {u + J v}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import NamedTuple

import numpy as np

from .errors import DomainError

__all__ = [
    "Quaternion",
    "UnitImaginary",
    "SlicePoint",
    "Sphere",
    "SliceSplit",
    "ONE",
    "E1",
    "E2",
    "E3",
    "qmul",
    "qinv",
    "qconj",
    "split_along",
    "sphere_of",
    "in_sphere",
    "sphere_distance",
    "unit_of",
    "random_unit",
    "random_quaternion",
    "hamilton",
]


def _is_scalar(v) -> bool:
    return isinstance(v, Real) and not isinstance(v, bool)


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Immutable quaternion ``w + x e1 + y e2 + z e3`` in double precision."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    # numpy scalars must defer to our reflected operators
    __array_ufunc__ = None

    @classmethod
    def from_array(cls, a) -> Quaternion:
        a = np.asarray(a, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    @classmethod
    def coerce(cls, v) -> Quaternion:
        """Promote a real number to a quaternion; pass quaternions through."""
        if isinstance(v, Quaternion):
            return v
        if _is_scalar(v):
            return cls(float(v))
        raise TypeError(f"cannot interpret {type(v).__name__} as a quaternion")

    @classmethod
    def from_complex(cls, z: complex, J: Quaternion) -> Quaternion:
        """Embed ``z = a + ib`` as ``a + J b`` in the slice ``C_J``."""
        z = complex(z)
        return cls(z.real + 0.0, z.imag * J.x, z.imag * J.y, z.imag * J.z)

    @property
    def array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def real(self) -> float:
        return self.w

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def imag(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def imag_norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.hypot(self.w, self.x, self.y, self.z)

    __abs__ = norm

    def conj(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> Quaternion:
        n = self.norm()
        if n == 0.0:
            raise DomainError("the zero quaternion has no inverse")
        # dividing by the norm twice avoids underflow of |q|^2 for tiny q
        return Quaternion(self.w / n / n, -self.x / n / n, -self.y / n / n, -self.z / n / n)

    def is_real(self, tol: float = 0.0) -> bool:
        return self.imag_norm() <= tol

    def to_complex(self, J: Quaternion) -> complex:
        """Coordinates ``(u, v)`` of ``u + J v``; the part orthogonal to C_J is dropped."""
        return complex(self.w, self.x * J.x + self.y * J.y + self.z * J.z)

    def close(self, other, tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol

    # arithmetic -----------------------------------------------------------

    def __add__(self, o):
        if isinstance(o, Quaternion):
            return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
        if _is_scalar(o):
            o = float(o)
            return Quaternion(self.w + o, self.x, self.y, self.z)
        return NotImplemented

    def __radd__(self, o):
        if _is_scalar(o):
            o = float(o)
            return Quaternion(o + self.w, self.x, self.y, self.z)
        return NotImplemented

    def __sub__(self, o):
        if isinstance(o, Quaternion):
            return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
        if _is_scalar(o):
            o = float(o)
            return Quaternion(self.w - o, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, o):
        if _is_scalar(o):
            o = float(o)
            return Quaternion(o - self.w, -self.x, -self.y, -self.z)
        return NotImplemented

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __pos__(self):
        return self

    def __mul__(self, o):
        if isinstance(o, Quaternion):
            a0, a1, a2, a3 = self.w, self.x, self.y, self.z
            b0, b1, b2, b3 = o.w, o.x, o.y, o.z
            return Quaternion(
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            )
        if _is_scalar(o):
            o = float(o)
            return Quaternion(self.w * o, self.x * o, self.y * o, self.z * o)
        return NotImplemented

    def __rmul__(self, o):
        if _is_scalar(o):
            o = float(o)
            return Quaternion(o * self.w, o * self.x, o * self.y, o * self.z)
        return NotImplemented

    def __truediv__(self, o):
        """Right division ``self * o^{-1}``."""
        if isinstance(o, Quaternion):
            return self * o.inverse()
        if _is_scalar(o):
            o = float(o)
            return Quaternion(self.w / o, self.x / o, self.y / o, self.z / o)
        return NotImplemented

    def __rtruediv__(self, o):
        if _is_scalar(o):
            o = float(o)
            return o * self.inverse()
        return NotImplemented

    def __pow__(self, m: int):
        if not isinstance(m, (int, np.integer)):
            return NotImplemented
        if m < 0:
            return self.inverse() ** (-m)
        out, base = ONE, self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out


ONE = Quaternion(1.0)
E1 = Quaternion(0.0, 1.0)
E2 = Quaternion(0.0, 0.0, 1.0)
E3 = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True, slots=True)
class UnitImaginary(Quaternion):
    """An element ``J`` of the unit sphere of purely imaginary quaternions."""

    def __post_init__(self):
        if abs(self.w) > 1e-12 or abs(math.hypot(self.x, self.y, self.z) - 1.0) > 1e-12:
            raise DomainError(f"not a unit imaginary quaternion: {self!r}")

    @classmethod
    def from_vector(cls, x: float, y: float, z: float) -> UnitImaginary:
        m = max(abs(x), abs(y), abs(z))
        if m == 0.0:
            raise DomainError("zero vector has no direction")
        if not 1e-150 < m < 1e150:
            # rescale so tiny or huge components normalize correctly
            x, y, z = x / m, y / m, z / m
        n = math.hypot(x, y, z)
        return cls(0.0, float(x / n), float(y / n), float(z / n))

    @classmethod
    def of(cls, v) -> UnitImaginary:
        """Coerce a quaternion with (numerically) unit imaginary part."""
        if isinstance(v, UnitImaginary):
            return v
        q = Quaternion.coerce(v)
        if abs(q.w) > 1e-12:
            raise DomainError(f"not purely imaginary: {q!r}")
        return cls.from_vector(q.x, q.y, q.z)


class SlicePoint(NamedTuple):
    """The point ``u + J v`` of the slice ``C_J``."""

    u: float
    v: float
    J: UnitImaginary

    def to_quaternion(self) -> Quaternion:
        return Quaternion(self.u, self.v * self.J.x, self.v * self.J.y, self.v * self.J.z)

    def conj(self) -> SlicePoint:
        return SlicePoint(self.u, -self.v, self.J)


class Sphere(NamedTuple):
    """``[q] = {center + J radius : J in S}``; radius 0 is a real point."""

    center: float
    radius: float

    @property
    def is_point(self) -> bool:
        return self.radius == 0.0

    def contains(self, p: Quaternion, tol: float = 1e-12) -> bool:
        return sphere_distance(p, self) <= tol

    def slice_roots(self, J: Quaternion) -> tuple[Quaternion, Quaternion]:
        """The two points ``center +- J radius`` where the sphere meets C_J."""
        up = Quaternion(self.center, self.radius * J.x, self.radius * J.y, self.radius * J.z)
        return up, up.conj()


class SliceSplit(NamedTuple):
    """``q = c1 + c2 J2`` with ``c1, c2`` complex coordinates in ``C_J``."""

    c1: complex
    c2: complex
    J: UnitImaginary
    J2: UnitImaginary

    def reconstruct(self) -> Quaternion:
        a = Quaternion.from_complex(self.c1, self.J)
        b = Quaternion.from_complex(self.c2, self.J)
        return a + b * self.J2


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a b``."""
    return Quaternion.coerce(a) * Quaternion.coerce(b)


def qinv(q: Quaternion) -> Quaternion:
    """Multiplicative inverse ``conj(q) / |q|^2``."""
    return Quaternion.coerce(q).inverse()


def qconj(q: Quaternion) -> Quaternion:
    return Quaternion.coerce(q).conj()


def _complement(J: Quaternion) -> UnitImaginary:
    j = np.array(J.vector)
    for cand in (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])):
        r = cand - (cand @ j) * j
        n = np.linalg.norm(r)
        # |r| >= 1/2 keeps the Gram-Schmidt step well conditioned
        if n >= 0.5:
            r = r - (r @ j) * j
            r /= np.linalg.norm(r)
            return UnitImaginary(0.0, float(r[0]), float(r[1]), float(r[2]))
    raise AssertionError("unreachable: e2, e3 cannot both be parallel to J")


def split_along(q: Quaternion, J: Quaternion) -> SliceSplit:
    """Decompose ``q = c1 + c2 J2`` with ``c1, c2`` in ``C_J`` and ``J2`` orthogonal to ``J``.

    ``J2`` is ``e2`` orthogonalized against ``J``, or ``e3`` when ``J`` is nearly
    parallel to ``e2``, so the split is deterministic and well conditioned.  With ``J3 = J J2`` the coordinates are
    ``c1 = <q,1> + i <q,J>`` and ``c2 = <q,J2> + i <q,J3>``.
    """
    q = Quaternion.coerce(q)
    J = UnitImaginary.of(J)
    J2 = _complement(J)
    J3 = J * J2
    qv = q.array
    c1 = complex(qv[0], qv @ J.array)
    c2 = complex(qv @ J2.array, qv @ J3.array)
    return SliceSplit(c1, c2, J, J2)


def sphere_of(q: Quaternion) -> Sphere:
    q = Quaternion.coerce(q)
    return Sphere(q.w, q.imag_norm())


def sphere_distance(p: Quaternion, sphere) -> float:
    """Distance from ``p`` to the sphere ``[q]`` (equivalently, from the slice point of p)."""
    p = Quaternion.coerce(p)
    if isinstance(sphere, Quaternion):
        sphere = sphere_of(sphere)
    return math.hypot(p.w - sphere.center, p.imag_norm() - sphere.radius)


def in_sphere(p: Quaternion, q: Quaternion, tol: float = 1e-12) -> bool:
    """``p in [q]``, decided with an absolute tolerance."""
    return sphere_distance(p, q) <= tol


def unit_of(q: Quaternion, default: Quaternion = E1) -> UnitImaginary:
    """``J_q = Im(q)/|Im(q)|``; real quaternions get ``default``."""
    q = Quaternion.coerce(q)
    if (q.x, q.y, q.z) == (0.0, 0.0, 0.0):
        return UnitImaginary.of(default)
    return UnitImaginary.from_vector(q.x, q.y, q.z)


def random_unit(rng: np.random.Generator) -> UnitImaginary:
    """Uniform sample of the unit sphere S (normalized Gaussian vector)."""
    while True:
        v = rng.standard_normal(3)
        n = np.linalg.norm(v)
        if n > 1e-6:
            return UnitImaginary.from_vector(*(v / n))


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion.from_array(scale * rng.standard_normal(4))


# structure constants: E_i E_j = SIGN[i, j] * E_{INDEX[i, j]}
_INDEX = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
_SIGN = np.array(
    [
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
        [1, 1, -1, -1],
    ],
    dtype=float,
)
STRUCTURE = np.zeros((4, 4, 4))
for _i in range(4):
    for _j in range(4):
        STRUCTURE[_i, _j, _INDEX[_i, _j]] = _SIGN[_i, _j]


def hamilton(a: np.ndarray, b: np.ndarray, op=np.multiply) -> np.ndarray:
    """Hamilton product on component-stacked arrays.

    ``a`` and ``b`` carry the four components along axis 0; ``op`` combines
    component blocks (``np.multiply`` for elementwise data, ``np.matmul``
    for quaternionic matrices).
    """
    prod = op(a[:, None], b[None, :])
    return np.einsum("ijk,ij...->k...", STRUCTURE, prod)
