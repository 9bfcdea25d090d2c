import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from oracle import cm, from_cm, o_fl, o_norm, o_qcs_inv, o_sl, o_sr, scal
from strategies import quaternions, seeds

from qharmonic import (
    E1,
    E2,
    CommutingTuple,
    DimensionError,
    DivergenceError,
    NearSingularError,
    NonCommutingError,
    Quaternion,
    QuaternionMatrix,
    Sphere,
    f_resolvent_left,
    format_matrix,
    parse_matrix,
    power_sums,
    pseudo_resolvent_series,
    qcs_T,
    qcs_T_inv,
    qm_inverse,
    random_commuting_tuple,
    read_tuple,
    s_resolvent_left,
    s_resolvent_right,
    s_resolvent_series,
    s_spectrum,
    sphere_distance,
    spherical_tuple,
    write_tuple,
)

sizes = st.integers(1, 4)


def tuple_from(seed, n, **kw):
    return random_commuting_tuple(n, np.random.default_rng(seed), **kw)


def away_from_spectrum(s, T, margin=0.2):
    return all(sphere_distance(s, Quaternion(p.sphere.center, p.sphere.radius)) > margin for p in s_spectrum(T).points)


# matrices ----------------------------------------------------------------------------


def test_inverse_examples():
    assert qm_inverse(QuaternionMatrix.identity(3)).allclose(QuaternionMatrix.identity(3), 0)
    D = QuaternionMatrix.diag([E1, 2])
    assert qm_inverse(D).allclose(QuaternionMatrix.diag([-E1, 0.5]), 1e-15)


def test_inverse_singular():
    with pytest.raises(NearSingularError):
        qm_inverse(QuaternionMatrix.diag([1, 0]))


def test_shape_errors():
    with pytest.raises(DimensionError):
        QuaternionMatrix(np.zeros((4, 2, 3)))
    with pytest.raises(DimensionError):
        QuaternionMatrix.identity(2) * QuaternionMatrix.identity(3)


def test_scalar_sides():
    M = QuaternionMatrix.from_entries([[1, E1], [E2, 0]])
    assert (E1 * M).entry(1, 0) == E1 * E2
    assert (M * E1).entry(1, 0) == E2 * E1
    assert (M + 1).entry(0, 0) == Quaternion(2.0)


@given(seeds, sizes)
def test_product_and_inverse_match_oracle(seed, n):
    rng = np.random.default_rng(seed)
    A = QuaternionMatrix(rng.standard_normal((4, n, n)))
    B = QuaternionMatrix(rng.standard_normal((4, n, n)))
    assert np.allclose(cm(A * B), cm(A) @ cm(B), atol=1e-12)
    assume(np.linalg.cond(cm(A)) < 1e6)
    assert from_cm(np.linalg.inv(cm(A))).allclose(A.inverse(), 1e-8 * np.linalg.cond(cm(A)))
    assert (A * A.inverse()).allclose(QuaternionMatrix.identity(n), 1e-8)


@given(seeds, sizes)
def test_adjoint_is_multiplicative(seed, n):
    rng = np.random.default_rng(seed)
    A = QuaternionMatrix(rng.standard_normal((4, n, n)))
    B = QuaternionMatrix(rng.standard_normal((4, n, n)))
    assert np.allclose((A * B).adjoint(), A.adjoint() @ B.adjoint(), atol=1e-12)
    assert QuaternionMatrix.from_adjoint(A.adjoint()).allclose(A, 1e-15)
    assert A.norm() == pytest.approx(o_norm(cm(A)), rel=1e-10)


# tuples and resolvents --------------------------------------------------------------


def test_noncommuting_rejected():
    with pytest.raises(NonCommutingError):
        CommutingTuple(np.eye(2), np.array([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]]), np.zeros((2, 2)))


def test_qcs_examples():
    T0 = CommutingTuple.diagonal([0])
    assert qcs_T(2, T0).allclose(QuaternionMatrix.scalar(4, 1), 0)
    assert qcs_T_inv(2, T0).allclose(QuaternionMatrix.scalar(0.25, 1), 1e-16)
    T1 = CommutingTuple.diagonal([E1])
    assert qcs_T(2, T1).allclose(QuaternionMatrix.scalar(5, 1), 0)
    T = CommutingTuple.diagonal([E1, 2 * E1])
    assert qcs_T_inv(3, T).allclose(QuaternionMatrix.diag([0.1, 1 / 13]), 1e-16)


def test_resolvent_examples():
    assert s_resolvent_left(2, CommutingTuple.diagonal([0])).allclose(QuaternionMatrix.scalar(0.5, 1), 1e-16)
    assert s_resolvent_left(2, CommutingTuple.diagonal([E1])).allclose(QuaternionMatrix.scalar((2 + E1) * 0.2, 1), 1e-16)
    assert f_resolvent_left(2, CommutingTuple.diagonal([0, 0])).allclose(QuaternionMatrix.scalar(-0.5, 2), 1e-16)


def test_series_examples():
    T = CommutingTuple.diagonal([0, 0])
    s = Quaternion(0.5, 1.0)
    assert pseudo_resolvent_series(s, T, M=1).allclose(QuaternionMatrix.scalar(s.inverse() ** 2, 2), 1e-15)
    T1 = CommutingTuple.diagonal([E1])
    assert pseudo_resolvent_series(2, T1, M=80).allclose(QuaternionMatrix.scalar(0.2, 1), 1e-12)
    with pytest.raises(DivergenceError):
        s_resolvent_series(1, CommutingTuple.diagonal([2 * E1]))


@given(seeds, sizes, quaternions(-3, 3))
def test_resolvents_match_oracle(seed, n, s):
    T = tuple_from(seed, n)
    assume(away_from_spectrum(s, T))
    scale = max(1.0, o_norm(o_qcs_inv(s, T)))
    assert np.allclose(cm(qcs_T_inv(s, T)), o_qcs_inv(s, T), atol=1e-10 * scale)
    assert np.allclose(cm(qcs_T_inv(s, T, method="embedding")), o_qcs_inv(s, T), atol=1e-10 * scale)
    assert np.allclose(cm(s_resolvent_left(s, T)), o_sl(s, T), atol=1e-9 * scale)
    assert np.allclose(cm(s_resolvent_right(s, T)), o_sr(s, T), atol=1e-9 * scale)
    assert np.allclose(cm(f_resolvent_left(s, T)), o_fl(s, T), atol=1e-8 * scale**2)


@given(seeds, sizes, quaternions(-1, 1))
def test_series_match_closed_forms(seed, n, direction):
    T = tuple_from(seed, n)
    assume(direction.norm() > 1e-3)
    s = direction * (T.norm() / 0.7 / direction.norm())
    ref = qcs_T_inv(s, T)
    assert (pseudo_resolvent_series(s, T, M=80) - ref).norm() < 1e-10 * max(1.0, ref.norm())
    ref = s_resolvent_left(s, T)
    assert (s_resolvent_series(s, T, M=80) - ref).norm() < 1e-10 * max(1.0, ref.norm())


@given(seeds, sizes)
def test_power_sums_recursion(seed, n):
    T = tuple_from(seed, n)
    P = power_sums(T, 4)
    X, Xb = T.T, T.Tbar
    assert P[1].allclose(QuaternionMatrix.identity(n), 0)
    assert P[3].allclose(X * X + X * Xb + Xb * Xb, 1e-12)


# S-spectrum ---------------------------------------------------------------------------


def test_spectrum_examples():
    sp = s_spectrum(CommutingTuple.diagonal([E1, 2 * E1]))
    assert np.allclose([p.sphere for p in sp.spheres], [Sphere(0.0, 1.0), Sphere(0.0, 2.0)], atol=1e-14)
    assert sp.certified and sp.total_multiplicity == 2

    T1 = np.array([[0.0, 1.0], [1.0, 0.0]])
    sp = s_spectrum(CommutingTuple(np.zeros((2, 2)), T1, np.zeros((2, 2)), np.zeros((2, 2))))
    assert len(sp.spheres) == 1 and sp.spheres[0].multiplicity == 2
    assert sp.spheres[0].sphere.center == pytest.approx(0, abs=1e-12)
    assert sp.spheres[0].sphere.radius == pytest.approx(1, abs=1e-12)

    sp = s_spectrum(CommutingTuple(3 * np.eye(3), *[np.zeros((3, 3))] * 3))
    assert not sp.spheres and len(sp.real_points) == 1
    assert sp.real_points[0].sphere.center == pytest.approx(3) and sp.real_points[0].multiplicity == 3


@given(seeds, sizes)
def test_spectrum_makes_qcs_singular(seed, n):
    T = tuple_from(seed, n)
    sp = s_spectrum(T)
    assert sp.total_multiplicity == n
    for p in sp.points:
        s = Quaternion(p.sphere.center, p.sphere.radius)
        sv = np.linalg.svd(cm(qcs_T(s, T)), compute_uv=False)
        assert sv[-1] <= 1e-6 * max(1.0, sv[0])


@given(seeds, st.lists(st.floats(0.5, 3.0), min_size=1, max_size=4))
def test_spherical_tuple_spectrum(seed, radii):
    T = spherical_tuple(radii, np.random.default_rng(seed))
    assert T.has_zero_real_part() and T.has_real_component_spectra()
    sp = s_spectrum(T)
    got = sorted(p.sphere.radius for p in sp.spheres for _ in range(int(round(2 * p.multiplicity)) // 2))
    assert np.allclose(got, sorted(radii), atol=1e-6)


@given(seeds, sizes)
def test_similarity_preserves_spectrum(seed, n):
    T = tuple_from(seed, n)
    P = np.random.default_rng(seed + 1).standard_normal((n, n)) + 3 * np.eye(n)
    a = [p.sphere for p in s_spectrum(T).points]
    b = [p.sphere for p in s_spectrum(T.similar(P)).points]
    assert len(a) == len(b)
    for x, y in zip(sorted(a), sorted(b)):
        assert np.allclose(x, y, atol=1e-6)


# text I/O -----------------------------------------------------------------------------


def test_parse_and_format_roundtrip():
    M = parse_matrix("1,0,0,0  0,1,0,0\n2  0,0,0,-1.5  # comment\n")
    assert M.entry(0, 1) == E1 and M.entry(1, 1) == Quaternion(0, 0, 0, -1.5)
    assert parse_matrix(format_matrix(M)) == M
    with pytest.raises(DimensionError):
        parse_matrix("1 2\n3")
    with pytest.raises(ValueError):
        parse_matrix("1,2 3")


@given(seed=seeds, n=sizes)
def test_tuple_file_roundtrip(tmp_path_factory, seed, n):
    T = tuple_from(seed, n)
    path = tmp_path_factory.mktemp("t") / "T.txt"
    write_tuple(T, path)
    U = read_tuple(path)
    assert all(np.array_equal(a, b) for a, b in zip(T.components, U.components))


def test_read_tuple_single_block_and_errors():
    T = read_tuple("0,1,0,0 0\n0 0,2,0,0\n")
    assert T.T.allclose(QuaternionMatrix.diag([E1, 2 * E1]), 0)
    with pytest.raises(ValueError):
        read_tuple("1\n\n2\n")
    with pytest.raises(ValueError):
        read_tuple("0,1,0,0\n\n0\n\n0\n\n0\n")


def test_scal_helper_is_consistent():
    assert np.allclose(cm(QuaternionMatrix.scalar(E2, 2)), scal(E2, 2))
