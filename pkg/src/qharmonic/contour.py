"""Slice Cauchy domains bounded by circles and trapezoidal contour integration.

Domains are described in slice coordinates ``z = u + iv``; for a given
imaginary unit ``J`` the point ``z`` stands for ``u + J v``.  Every domain
built from :class:`RealDisk` and :class:`SpherePair` pieces is symmetric
about the real axis, so it is the slice of an axially symmetric open set.

On a circle ``s = c + r e^{J theta}`` the line element is
``ds = J r e^{J theta} d theta`` and the integrals use ``ds_J = ds (-J)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import ContourError, DomainError
from .func import SliceFunctionSpec
from .kernels import comm_pseudo_kernel, f_kernel_left, f_kernel_right, s_kernel_left, s_kernel_right
from .quat import E1, Quaternion, SlicePoint, UnitImaginary, sphere_of

__all__ = [
    "RealDisk",
    "SpherePair",
    "Circle",
    "SliceCauchyDomain",
    "QuadContour",
    "discretize",
    "pairwise_sum",
    "sandwich_integrate",
    "check_pole_margin",
    "cauchy_eval",
    "fueter_transform",
    "harmonic_eval",
    "POLE_MARGIN",
    "DEFAULT_NODES",
]

POLE_MARGIN = 0.05
DEFAULT_NODES = 128
MIN_GAP = 1e-6


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    orientation: int = 1  # +1 counter-clockwise, -1 clockwise

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) < self.radius

    def distance(self, z: complex) -> float:
        return abs(abs(z - self.center) - self.radius)


@dataclass(frozen=True)
class RealDisk:
    center: float
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ContourError("disk radius must be positive")

    def circles(self, orientation: int = 1) -> tuple[Circle, ...]:
        return (Circle(complex(self.center, 0.0), self.radius, orientation),)


@dataclass(frozen=True)
class SpherePair:
    """Two conjugate disks about ``center +- J offset``: a torus-like axially symmetric set."""

    center: float
    offset: float
    radius: float

    def __post_init__(self):
        if not self.offset > 0 or not self.radius > 0:
            raise ContourError("sphere pair needs positive offset and radius")
        if self.radius >= self.offset - MIN_GAP / 2:
            raise ContourError("sphere-pair disks must not reach the real axis")

    def circles(self, orientation: int = 1) -> tuple[Circle, ...]:
        return (
            Circle(complex(self.center, self.offset), self.radius, orientation),
            Circle(complex(self.center, -self.offset), self.radius, orientation),
        )


Piece = Union[RealDisk, SpherePair]


def _nested(inner: Circle, outer: Circle) -> bool:
    return abs(inner.center - outer.center) + inner.radius < outer.radius - MIN_GAP


def _disjoint(a: Circle, b: Circle) -> bool:
    return abs(a.center - b.center) > a.radius + b.radius + MIN_GAP


@dataclass(frozen=True)
class SliceCauchyDomain:
    """Union of disk pieces minus holes, each hole strictly inside a component."""

    components: tuple[Piece, ...]
    holes: tuple[Piece, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "holes", tuple(self.holes))
        if not self.components:
            raise ContourError("a domain needs at least one component")
        outer = [c for p in self.components for c in p.circles()]
        inner = [c for p in self.holes for c in p.circles()]
        for i, a in enumerate(outer):
            for b in outer[i + 1 :]:
                if not _disjoint(a, b):
                    raise ContourError("component boundaries overlap")
        for i, a in enumerate(inner):
            for b in inner[i + 1 :]:
                if not _disjoint(a, b):
                    raise ContourError("hole boundaries overlap")
            if not any(_nested(a, o) for o in outer):
                raise ContourError("every hole must lie strictly inside a component")

    @classmethod
    def disk(cls, radius: float, center: float = 0.0) -> SliceCauchyDomain:
        return cls((RealDisk(center, radius),))

    def circles(self) -> tuple[Circle, ...]:
        return tuple(c for p in self.components for c in p.circles(1)) + tuple(
            c for p in self.holes for c in p.circles(-1)
        )

    def contains(self, z: complex) -> bool:
        """Strict membership of the slice point ``z``."""
        cs = self.circles()
        inside = any(c.contains(z) for c in cs if c.orientation > 0)
        in_hole = any(abs(z - c.center) <= c.radius for c in cs if c.orientation < 0)
        return inside and not in_hole

    def contains_quaternion(self, q) -> bool:
        """``[q]`` inside the axially symmetric set (symmetry makes one slice point enough)."""
        sph = sphere_of(q)
        return self.contains(complex(sph.center, sph.radius))

    def boundary_distance(self, z: complex) -> float:
        return min(c.distance(z) for c in self.circles())

    def max_modulus(self) -> float:
        """``max |z|`` over the closure."""
        return max(abs(c.center) + c.radius for c in self.circles() if c.orientation > 0)

    def min_radius(self) -> float:
        return min(c.radius for c in self.circles())


@dataclass(frozen=True)
class QuadContour:
    """Trapezoidal discretization of the oriented boundary in ``C_J``.

    ``z`` and ``dz`` hold complex slice coordinates of nodes and ``ds_J``
    weights; ``nodes`` / ``weights`` are the same data as quaternions.
    """

    J: UnitImaginary
    circles: tuple[Circle, ...]
    N: int
    z: np.ndarray
    dz: np.ndarray
    circle_index: np.ndarray

    @property
    def nodes(self) -> tuple[Quaternion, ...]:
        return tuple(Quaternion.from_complex(v, self.J) for v in self.z)

    @property
    def weights(self) -> tuple[Quaternion, ...]:
        return tuple(Quaternion.from_complex(v, self.J) for v in self.dz)

    @property
    def slice_points(self) -> tuple[SlicePoint, ...]:
        return tuple(SlicePoint(v.real, v.imag, self.J) for v in self.z)

    def __len__(self) -> int:
        return self.z.size

    def restrict(self, index: int) -> QuadContour:
        """The nodes of a single circle."""
        m = self.circle_index == index
        return QuadContour(self.J, (self.circles[index],), self.N, self.z[m], self.dz[m], np.zeros(m.sum(), int))


def discretize(domain: SliceCauchyDomain, J=E1, N: int = DEFAULT_NODES) -> QuadContour:
    """Uniform trapezoidal nodes ``c + r e^{J theta_k}``, ``theta_k = 2 pi k / N``.

    Outer circles are counter-clockwise and holes clockwise.  The weight
    ``ds_J = ds (-J)`` is formed literally with quaternion products.
    """
    if N < 16 or N % 2:
        raise ContourError("N must be an even integer >= 16")
    J = UnitImaginary.of(J)
    mJ = -J
    theta = 2.0 * np.pi * np.arange(N) / N
    dtheta = 2.0 * np.pi / N
    zs, dzs, idx = [], [], []
    for k, c in enumerate(domain.circles()):
        e = np.exp(1j * theta)
        zs.append(c.center + c.radius * e)
        ds = [Quaternion.from_complex(1j * c.orientation * c.radius * v * dtheta, J) for v in e]
        dzs.append(np.array([(d * mJ).to_complex(J) for d in ds]))
        idx.append(np.full(N, k))
    return QuadContour(J, domain.circles(), N, np.concatenate(zs), np.concatenate(dzs), np.concatenate(idx))


def pairwise_sum(terms: Sequence):
    """Deterministic pairwise (cascade) summation in the given order."""
    n = len(terms)
    if n == 0:
        raise ValueError("empty sum")
    if n <= 8:
        acc = terms[0]
        for t in terms[1:]:
            acc = acc + t
        return acc
    h = n // 2
    return pairwise_sum(terms[:h]) + pairwise_sum(terms[h:])


Factor = Union[Callable[[Quaternion], object], Quaternion, float, None]


def _factor(f: Factor, s: Quaternion):
    if f is None:
        return None
    return f(s) if callable(f) else f


def sandwich_integrate(left: Factor, contour: QuadContour, right: Factor):
    """``sum_k left(s_k) ds_J,k right(s_k)`` with the factor order kept as written.

    ``left`` / ``right`` may be callables of the node, constants, or ``None``
    (meaning 1).  Values may be quaternions or quaternion matrices; matrices
    of different sizes raise :class:`~qharmonic.errors.DimensionError`.
    """
    terms = []
    for s, w in zip(contour.nodes, contour.weights):
        a, b = _factor(left, s), _factor(right, s)
        t = w if a is None else a * w
        if b is not None:
            t = t * b
        terms.append(t)
    return pairwise_sum(terms)


def check_pole_margin(domain: SliceCauchyDomain, points: Sequence[complex], margin: float = POLE_MARGIN) -> None:
    """Reject contours passing within ``margin * radius`` of a singular slice point."""
    for c in domain.circles():
        for z in points:
            if c.distance(z) < margin * c.radius:
                raise ContourError(
                    f"singular point {z:.6g} within {margin} x radius of the circle about {c.center:.6g}"
                )


def _interior_point(f: SliceFunctionSpec, q, domain: SliceCauchyDomain, margin: float) -> Quaternion:
    q = Quaternion.coerce(q)
    if not domain.contains_quaternion(q):
        raise DomainError(f"{q} is not inside the domain")
    sph = sphere_of(q)
    zq = complex(sph.center, sph.radius)
    check_pole_margin(domain, [zq, zq.conjugate()], margin)
    if domain.max_modulus() >= f.radius:
        raise DomainError("the function's radius of validity does not cover the domain")
    return q


def cauchy_eval(f: SliceFunctionSpec, q, domain: SliceCauchyDomain, J=E1, N: int = DEFAULT_NODES,
                margin: float = POLE_MARGIN) -> Quaternion:
    """``(1/2pi) int S_L^{-1}(s, q) ds_J f(s)`` (right functions: ``f(s) ds_J S_R^{-1}(s, q)``)."""
    q = _interior_point(f, q, domain, margin)
    C = discretize(domain, J, N)
    if f.acts_left:
        val = sandwich_integrate(lambda s: s_kernel_left(s, q), C, f)
    else:
        val = sandwich_integrate(f, C, lambda s: s_kernel_right(s, q))
    return val * (1.0 / (2.0 * math.pi))


def fueter_transform(f: SliceFunctionSpec, q, domain: SliceCauchyDomain, J=E1, N: int = DEFAULT_NODES,
                     margin: float = POLE_MARGIN) -> Quaternion:
    """``(1/2pi) int F_L(s, q) ds_J f(s)``, which equals ``Delta f(q)``."""
    q = _interior_point(f, q, domain, margin)
    C = discretize(domain, J, N)
    if f.acts_left:
        val = sandwich_integrate(lambda s: f_kernel_left(s, q), C, f)
    else:
        val = sandwich_integrate(f, C, lambda s: f_kernel_right(s, q))
    return val * (1.0 / (2.0 * math.pi))


def harmonic_eval(f: SliceFunctionSpec, q, domain: SliceCauchyDomain, J=E1, N: int = DEFAULT_NODES,
                  margin: float = POLE_MARGIN) -> Quaternion:
    """``-(1/pi) int Q_{c,s}(q)^{-1} ds_J f(s)``, the integral form of ``D f(q)``."""
    q = _interior_point(f, q, domain, margin)
    C = discretize(domain, J, N)
    if f.acts_left:
        val = sandwich_integrate(lambda s: comm_pseudo_kernel(s, q), C, f)
    else:
        val = sandwich_integrate(f, C, lambda s: comm_pseudo_kernel(s, q))
    return val * (-1.0 / math.pi)
