import math

import numpy as np
import pytest
from hypothesis import given
from oracle import trapezoid_circle
from strategies import quaternions, units

from qharmonic import (
    E1,
    E2,
    ContourError,
    DomainError,
    Quaternion,
    RealDisk,
    SliceCauchyDomain,
    SliceFunctionSpec,
    SpherePair,
    UnitImaginary,
    cauchy_eval,
    check_pole_margin,
    discretize,
    fueter_analytic,
    fueter_transform,
    harmonic_eval,
    pairwise_sum,
    sandwich_integrate,
    split_along,
)


def dist(a, b):
    return (Quaternion.coerce(a) - Quaternion.coerce(b)).norm()


DISK2 = SliceCauchyDomain.disk(2.0)


# domains --------------------------------------------------------------------------


def test_domain_validation():
    with pytest.raises(ContourError):
        RealDisk(0, 0)
    with pytest.raises(ContourError):
        SpherePair(0, 1, 1.2)
    with pytest.raises(ContourError):
        SliceCauchyDomain((RealDisk(0, 1), RealDisk(1.5, 1)))
    with pytest.raises(ContourError):
        SliceCauchyDomain((RealDisk(0, 1),), holes=(RealDisk(0.5, 1),))
    with pytest.raises(ContourError):
        SliceCauchyDomain(())


def test_domain_membership():
    D = SliceCauchyDomain((RealDisk(0, 3),), holes=(SpherePair(0, 1, 0.5),))
    assert D.contains(0) and not D.contains(1j) and not D.contains(-1j) and D.contains(2j)
    assert D.contains_quaternion(Quaternion(0, 0, 2, 0)) and not D.contains_quaternion(E2)
    assert D.max_modulus() == 3 and D.min_radius() == 0.5


def test_discretize_layout():
    C = discretize(SliceCauchyDomain.disk(2.0), E1, 64)
    assert len(C) == 64
    assert np.allclose(np.abs(C.z), 2.0)
    assert abs(sum(C.dz)) < 1e-14
    with pytest.raises(ContourError):
        discretize(DISK2, E1, 15)


def test_hole_is_clockwise():
    D = SliceCauchyDomain((RealDisk(0, 3),), holes=(RealDisk(0, 1),))
    C = discretize(D, E1, 64)
    inner = C.restrict(1)
    # ds_J = J ds (-J) = ds on the slice; a clockwise unit circle integrates 1/z to -2 pi i
    tot = np.sum(inner.dz / inner.z)
    assert abs(tot - (-2j * math.pi) * (-1j)) < 1e-12


def test_closure_sum_vanishes():
    for J in (E1, UnitImaginary.from_vector(1, 2, 3)):
        C = discretize(SliceCauchyDomain((SpherePair(0.5, 2, 1),)), J, 32)
        for k in range(2):
            assert dist(pairwise_sum(list(C.restrict(k).weights)), 0) < 1e-14


def test_integral_of_inverse_is_two_pi():
    for J in (E1, E2):
        C = discretize(SliceCauchyDomain.disk(1.0), J, 64)
        val = sandwich_integrate(None, C, lambda s: s.inverse())
        assert dist(val, 2 * math.pi) < 1e-12


def test_constant_integrand_vanishes():
    C = discretize(SliceCauchyDomain.disk(1.3, 0.2), E2, 32)
    assert dist(sandwich_integrate(1.0, C, 1.0), 0) < 1e-14


def test_pole_margin():
    check_pole_margin(DISK2, [1.0 + 0.5j])
    with pytest.raises(ContourError):
        check_pole_margin(DISK2, [1.95])


def test_pairwise_sum_matches_builtin_on_integers():
    assert pairwise_sum(list(range(100))) == sum(range(100))
    with pytest.raises(ValueError):
        pairwise_sum([])


# Cauchy-type formulas ---------------------------------------------------------------


def test_cauchy_examples():
    f = SliceFunctionSpec.monomial(1)
    q = Quaternion(0.3, 0, 0.4, 0)
    assert dist(cauchy_eval(f, q, DISK2, N=128), q) < 1e-10
    g = SliceFunctionSpec.monomial(2)
    assert dist(cauchy_eval(g, q, DISK2, N=128), q * q) < 1e-9
    assert dist(fueter_transform(g, q, DISK2), -4) < 1e-8
    h = SliceFunctionSpec.monomial(3)
    assert dist(fueter_transform(h, q, DISK2), -8 * q - 4 * q.conj()) < 1e-7


def test_cauchy_rejects_outside_points():
    with pytest.raises(DomainError):
        cauchy_eval(SliceFunctionSpec.monomial(2), Quaternion(2.5), DISK2)
    with pytest.raises(ContourError):
        cauchy_eval(SliceFunctionSpec.monomial(2), Quaternion(0, 1.99), DISK2)
    with pytest.raises(DomainError):
        cauchy_eval(SliceFunctionSpec.left([1, 1], radius=1.5), 0, DISK2)


def test_slice_components_match_complex_trapezoid():
    # in the slice of q, the intrinsic Cauchy integral is the ordinary complex one
    J = E1
    q = Quaternion(0.3, 0.5, 0, 0)
    f = SliceFunctionSpec.intrinsic([1, -0.5, 0.25, 0, 0.1])
    zq = complex(q.w, q.x)
    ref = trapezoid_circle(lambda z: (1 - 0.5 * z + 0.25 * z**2 + 0.1 * z**4) / (z - zq), 0, 2.0, 128)
    got = cauchy_eval(f, q, DISK2, J=J, N=128)
    assert abs(got.to_complex(J) - ref) < 1e-12


@given(quaternions(-1, 1), units(), units())
def test_cauchy_formula_reproduces_left_series(q, J, K):
    f = SliceFunctionSpec.left([1, E2, Quaternion(0, 0.3, 0, 1), 0.5])
    q = q * (1.3 / max(1.0, q.norm()))
    a = cauchy_eval(f, q, DISK2, J=J, N=128)
    b = cauchy_eval(f, q, SliceCauchyDomain.disk(2.5), J=K, N=128)
    assert dist(a, f(q)) < 1e-8 and dist(a, b) < 1e-8


@given(quaternions(-1, 1), units())
def test_right_series_use_right_kernel(q, J):
    f = SliceFunctionSpec.right([0, E2, E1])
    q = q * (1.3 / max(1.0, q.norm()))
    assert dist(cauchy_eval(f, q, DISK2, J=J), f(q)) < 1e-8


@given(quaternions(-1, 1), units())
def test_harmonic_eval_matches_fueter_expansion(q, J):
    f = SliceFunctionSpec.left([0.5, E1, 0, Quaternion(1, 0, 0, 1), -0.2])
    q = q * (1.3 / max(1.0, q.norm()))
    assert dist(harmonic_eval(f, q, DISK2, J=J), fueter_analytic(f)(q)) < 1e-8


@given(quaternions(-1, 1))
def test_trapezoid_converges_geometrically(q):
    # at node ratio 0.7 the error falls by roughly 0.7^N
    f = SliceFunctionSpec.monomial(3)
    q = Quaternion(q.w, q.x, q.y, q.z)
    r = 0.7 * 2.0
    q = q * (r / max(q.norm(), 1e-3)) if q.norm() > 1e-3 else Quaternion(r)
    errs = [dist(cauchy_eval(f, q, DISK2, N=N), f(q)) for N in (32, 64)]
    assert errs[1] < 1e-3 * max(errs[0], 1e-13) or errs[1] < 1e-12


def test_split_of_weight_stays_in_slice():
    J = UnitImaginary.from_vector(1, 1, 1)
    C = discretize(DISK2, J, 16)
    for w in C.weights:
        assert abs(split_along(w, J).c2) < 1e-15
