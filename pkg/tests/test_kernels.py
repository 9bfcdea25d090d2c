import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from oracle import cq, from_cq
from strategies import quaternions

from qharmonic import (
    E1,
    E2,
    DivergenceError,
    PoleError,
    Quaternion,
    comm_pseudo_kernel,
    dsl_kernel,
    f_kernel_left,
    f_kernel_right,
    geometric_rate,
    kernel_identity_residuals,
    kernel_series,
    pseudo_kernel,
    q_series_errors,
    q_series_terms,
    s_kernel_left,
    s_kernel_right,
    sphere_distance,
)


def dist(a, b):
    return (Quaternion.coerce(a) - Quaternion.coerce(b)).norm()


# matrix-representation oracles
def o_pseudo(s, q):
    Q = cq(q)
    return from_cq(np.linalg.inv(Q @ Q - 2 * s.w * Q + s.norm2() * np.eye(2)))


def o_comm(s, q):
    S = cq(s)
    return from_cq(np.linalg.inv(S @ S - 2 * q.w * S + q.norm2() * np.eye(2)))


def o_sl(s, q):
    return from_cq((cq(s) - cq(q.conj())) @ cq(o_comm(s, q)))


def o_sr(s, q):
    return from_cq(cq(o_comm(s, q)) @ (cq(s) - cq(q.conj())))


def o_fl(s, q):
    K = cq(o_comm(s, q))
    return from_cq(-4 * (cq(s) - cq(q.conj())) @ K @ K)


def separated(s, q, margin=0.1):
    return sphere_distance(q, s) >= margin


# examples ------------------------------------------------------------------------


def test_pseudo_kernel_examples():
    # q^2 - 4 q + 4 = 3 - 4 e1 at q = e1
    assert dist(pseudo_kernel(2, E1), (3 + 4 * E1) * (1 / 25)) < 1e-16
    assert dist(pseudo_kernel(E1, 3), 0.1) < 1e-16
    assert dist(pseudo_kernel(0, 1), 1) == 0


def test_comm_pseudo_kernel_examples():
    assert dist(comm_pseudo_kernel(2, E1), 0.2) < 1e-16
    assert dist(comm_pseudo_kernel(2, 0), 0.25) == 0
    assert dist(comm_pseudo_kernel(3 * E1, E2), -1 / 8) < 1e-16


def test_s_kernel_examples():
    expected = (2 + E1) * 0.2
    assert dist(s_kernel_left(2, E1), expected) < 1e-16
    assert dist(s_kernel_left(2, E1, form="I"), expected) < 1e-14
    assert dist(s_kernel_left(3.0, 1.25), 1 / 1.75) < 1e-15
    assert dist(s_kernel_right(3.0, 1.25, form="I"), 1 / 1.75) < 1e-15
    with pytest.raises(ValueError):
        s_kernel_left(2, E1, form="III")


def test_f_kernel_examples():
    assert dist(f_kernel_left(2, E1), -4 * (2 + E1) * (1 / 25)) < 1e-16
    assert dist(f_kernel_left(2, 0), -0.5) < 1e-16
    s, q = Quaternion(2.0), E1
    F = f_kernel_left(s, q)
    assert dist(F * s - q * F, -4 * comm_pseudo_kernel(s, q)) < 1e-15
    assert dist(-4 * comm_pseudo_kernel(s, q), -0.8) < 1e-15


def test_dsl_examples():
    assert dist(dsl_kernel(2, E1), -0.4) < 1e-16
    assert dist(dsl_kernel(2, 0), -0.5) < 1e-16


def test_pole_is_rejected():
    with pytest.raises(PoleError):
        s_kernel_left(E1, E2)
    with pytest.raises(PoleError):
        comm_pseudo_kernel(1 + E2, 1 - E1)
    with pytest.raises(PoleError):
        kernel_identity_residuals(2, Quaternion(1.95))


def test_identity_residuals_at_anchor():
    res = kernel_identity_residuals(2, E1)
    assert len(res) == 12
    assert all(v < 1e-5 for v in res.values()), res


def test_series_examples():
    ks = kernel_series(2, E1, M=60)
    assert dist(ks.q_comm, 0.2) < 1e-15
    assert dist(kernel_series(Quaternion(2, 1, 0, 0), 0, M=0).s_left, Quaternion(2, 1, 0, 0).inverse()) < 1e-16
    s, q = Quaternion(2.0), Quaternion(0.5, 0, 0.5, 0)
    ks = kernel_series(s, q, M=80)
    assert dist(ks.q_comm, comm_pseudo_kernel(s, q)) < 1e-12
    assert dist(ks.s_left, s_kernel_left(s, q)) < 1e-12
    with pytest.raises(DivergenceError):
        kernel_series(1, 2 * E1)


def test_geometric_rate_on_exact_geometric_sequence():
    assert geometric_rate(0.5 ** np.arange(1, 40)) == pytest.approx(0.5, rel=1e-12)
    with pytest.raises(ValueError):
        geometric_rate([1.0, 1e-20])


# properties ----------------------------------------------------------------------


@given(quaternions(-2, 2), quaternions(-2, 2))
def test_kernels_match_matrix_oracle(s, q):
    assume(separated(s, q))
    assert dist(pseudo_kernel(s, q), o_pseudo(s, q)) < 1e-9
    assert dist(comm_pseudo_kernel(s, q), o_comm(s, q)) < 1e-9
    assert dist(s_kernel_left(s, q), o_sl(s, q)) < 1e-9
    assert dist(s_kernel_right(s, q), o_sr(s, q)) < 1e-9
    assert dist(f_kernel_left(s, q), o_fl(s, q)) < 1e-8


@given(quaternions(-2, 2), quaternions(-2, 2))
def test_two_forms_agree(s, q):
    assume(separated(s, q))
    scale = max(1.0, s_kernel_left(s, q).norm())
    assert dist(s_kernel_left(s, q, "I"), s_kernel_left(s, q, "II")) < 1e-12 * scale
    assert dist(s_kernel_right(s, q, "I"), s_kernel_right(s, q, "II")) < 1e-12 * scale


@given(quaternions(-2, 2), quaternions(-2, 2))
def test_comm_kernel_lies_in_slice_of_s(s, q):
    assume(separated(s, q) and s.imag_norm() > 1e-3)
    k = comm_pseudo_kernel(s, q)
    assert dist(k * s, s * k) < 1e-10 * max(1.0, k.norm() * s.norm())


@given(quaternions(-2, 2), quaternions(-2, 2))
def test_left_and_right_f_kernels_equation(s, q):
    assume(separated(s, q))
    k = comm_pseudo_kernel(s, q)
    FL, FR = f_kernel_left(s, q), f_kernel_right(s, q)
    scale = max(1.0, FL.norm() * s.norm())
    assert dist(FL * s - q * FL, -4 * k) < 1e-10 * scale
    assert dist(s * FR - FR * q, -4 * k) < 1e-10 * scale


@given(quaternions(-2, 2), quaternions(-2, 2))
def test_identity_battery_within_tolerances(s, q):
    assume(separated(s, q))
    res = kernel_identity_residuals(s, q)
    assert res["form_left"] < 1e-13 * max(1.0, s_kernel_left(s, q).norm())
    assert res["dsl_closed"] < 1e-12 * max(1.0, comm_pseudo_kernel(s, q).norm())
    for key in ("fueter_sl", "fueter_sr", "laplace2_q", "harmonic_dsl", "cauchy_riemann_s", "slice_derivative_q"):
        assert res[key] < 1e-4, key
    for key in ("laplace_sl_rel", "laplace_sr_rel", "fueter2_sl_rel"):
        assert res[key] < 1e-3, key


@given(quaternions(-1, 1), quaternions(-1, 1))
def test_series_tail_bounds_hold(s, q):
    s = s + Quaternion(3.0)
    ks = kernel_series(s, q, M=30)
    assert dist(ks.s_left, s_kernel_left(s, q)) <= ks.s_tail + 1e-14
    assert dist(ks.q_comm, comm_pseudo_kernel(s, q)) <= ks.q_tail + 1e-14


@pytest.mark.parametrize("ratio", [0.3, 0.5, 0.7])
def test_q_series_rate(ratio):
    s = Quaternion(0.3, 1.0, -0.5, 0.2)
    q = Quaternion(0.4, 0.1, 0.7, -0.3)
    q = q * (ratio * s.norm() / q.norm())
    errs = q_series_errors(s, q, 80)
    assert errs[-1] < 1e-10 * comm_pseudo_kernel(s, q).norm() or errs[-1] < 1e-12
    assert abs(geometric_rate(errs) / ratio - 1) < 0.1


@given(quaternions(-1, 1), quaternions(-1, 1), st.sampled_from([0.05, 0.1, 0.3, 0.5, 0.7]))
def test_term_envelope_rate(s, q, ratio):
    assume(s.norm() > 0.1 and q.norm() > 0.1)
    q = q * (ratio * s.norm() / q.norm())
    assert abs(geometric_rate(q_series_terms(s, q, 80), 0.0, math.inf) / ratio - 1) < 0.1


def test_identity_battery_near_the_margin():
    res = kernel_identity_residuals(0, Quaternion(0, 0, 0, 0.125))
    assert res["laplace2_q"] < 1e-4 and res["harmonic_dsl"] < 1e-4


def test_rate_ignores_exactly_cancelling_terms():
    # commuting s and q: every odd term vanishes up to round-off
    s, q = Quaternion(0, 0, 0, 1.0), Quaternion(0, 0, 0, 0.05)
    assert geometric_rate(q_series_terms(s, q, 80), 0.0, math.inf) == pytest.approx(0.05, rel=1e-6)
