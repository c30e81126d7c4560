import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.polynomial import Polynomial

from matgeom import expmlog, linalg, manifolds, spectral
from matgeom.exceptions import (
    NoRealAntisymmetricLog,
    NotPositiveDefiniteError,
    NotUnitaryError,
    UnsupportedError,
)
from matgeom.expmlog import Obstruction, expm
from matgeom.sampling import (
    random_antisymmetric,
    random_invertible,
    random_matrix,
    random_self_adjoint,
    random_special_orthogonal,
    random_spd,
    random_unitary,
    random_with_op_norm,
)


def test_expm_examples():
    r = expm(np.zeros((3, 3)))
    assert np.array_equal(r.value, np.eye(3))
    assert r.scaling_squarings == 0 and r.taylor_terms >= 1
    assert np.allclose(expm(np.diag([0.5, -1.5])).value, np.diag(np.exp([0.5, -1.5])), rtol=1e-14)
    rot = expm(np.array([[0.0, -1], [1, 0]])).value
    c, s = math.cos(1), math.sin(1)
    assert np.max(np.abs(rot - [[c, -s], [s, c]])) <= 1e-12


def test_expm_scaling_rule():
    A = np.diag([5.0, -1.0])
    r = expm(A)
    assert r.scaling_squarings == math.ceil(math.log2(5))
    assert abs(r.value[0, 0] - math.exp(5)) <= 1e-13 * math.exp(5)


def test_expm_matches_scipy_free_oracle(rng):
    # diagonalisable oracle: V diag(e^lambda) V^-1 from numpy's eig
    for _ in range(30):
        A = random_with_op_norm(rng, 5, 2.5)
        lam, V = np.linalg.eig(A)
        ref = (V * np.exp(lam)) @ np.linalg.inv(V)
        assert linalg.hs_norm(expm(A).value - ref) <= 1e-9 * linalg.hs_norm(ref)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.floats(0.0, 4.0), st.integers(0, 2**32 - 1))
def test_expm_norm_bounds(n, norm, seed):
    rng = np.random.default_rng(seed)
    A = random_with_op_norm(rng, n, norm, complex=bool(seed % 2)) if norm > 0 else np.zeros((n, n))
    E = expm(A).value
    bound = math.exp(linalg.op_norm(A)) * (1 + 1e-9)
    assert linalg.op_norm(E) <= bound
    assert linalg.op_norm(np.linalg.inv(E)) <= bound
    assert linalg.hs_norm(linalg.adjoint(E) - expm(linalg.adjoint(A)).value) <= 1e-10 * math.exp(norm) * max(1, n)


def test_expm_eigenvector_transport(rng):
    A = random_self_adjoint(rng, 4)
    dec = spectral.eigh(A)
    for t in (-1.0, 0.5, 2.0):
        E = expm(t * A).value
        for lam, v in zip(dec.eigenvalues, dec.basis.T):
            assert np.max(np.abs(E @ v - math.exp(t * lam) * v)) <= 1e-9 * max(1, math.exp(t * lam))


def test_expm_preserves_flag_pattern(rng):
    A = random_matrix(rng, 5)
    A[2:, :2] = 0
    A[4:, :4] = 0
    E = expm(A).value
    assert manifolds.flag_pattern_mass(E, (2, 4)) <= 1e-12 * linalg.hs_norm(E)


def test_lagrange_interpolant_realises_exp(rng):
    A = random_self_adjoint(rng, 4)
    lam = spectral.eigh(A).eigenvalues
    p = Polynomial([0.0])
    for j, lj in enumerate(lam):
        term = Polynomial([math.exp(lj)])
        for k, lk in enumerate(lam):
            if k != j:
                term = term * Polynomial([-lk, 1]) / (lj - lk)
        p = p + term
    E = expm(A).value
    assert linalg.hs_norm(spectral.poly_eval(p, A) - E) <= 1e-6 * linalg.hs_norm(E)


def test_identities_examples():
    Z = np.zeros((2, 2))
    rep = expmlog.expm_identities_check(Z, Z)
    assert rep.inverse == rep.adjoint == rep.product == rep.commutator == 0 and rep.commuting
    A = np.array([[0.3, 1.0], [-0.5, 0.2]])
    rep = expmlog.expm_identities_check(A, A @ A)
    assert rep.commuting and rep.product <= 1e-9
    rep = expmlog.expm_identities_check(np.array([[0.0, 1], [0, 0]]), np.array([[0.0, 0], [1, 0]]))
    assert not rep.commuting and rep.product > 1e-3


def test_det_exp_examples():
    assert expmlog.det_exp_identity(np.zeros((3, 3))) == (1.0, 1.0)
    lhs, rhs = expmlog.det_exp_identity(np.diag([1.0, 2]))
    assert abs(lhs - math.exp(3)) <= 1e-12 * math.exp(3) and rhs == math.exp(3)
    lhs, rhs = expmlog.det_exp_identity(np.array([[1.0, 2], [3, 4]]))
    assert abs(lhs - rhs) <= 1e-9 * rhs and abs(rhs - math.exp(5)) <= 1e-15 * math.exp(5)


def test_det_exp_complex(rng):
    A = random_with_op_norm(rng, 4, 2.0, complex=True)
    lhs, rhs = expmlog.det_exp_identity(A)
    assert abs(lhs - rhs) <= 1e-9 * abs(rhs)


def test_exp_ode_residual():
    assert expmlog.exp_ode_residual(np.zeros((2, 2)), np.linspace(0, 1, 11)) == 0
    assert expmlog.exp_ode_residual(np.array([[1.0]]), np.linspace(0, 1, 101)) <= 1e-8
    with pytest.raises(ValueError):
        expmlog.exp_ode_residual(np.eye(2), [])


def test_rk4_order_ratio(rng):
    for _ in range(5):
        A = random_with_op_norm(rng, 3, 1.5)
        assert expmlog.rk4_order_ratio(A, 1.0, 20) >= 14


def test_logm_spd_examples(rng):
    assert np.array_equal(expmlog.logm_spd(np.eye(3)), np.zeros((3, 3)))
    L = expmlog.logm_spd(np.diag([math.e, math.e**2]))
    assert np.allclose(L, np.diag([1.0, 2.0]), atol=1e-15)
    for _ in range(30):
        P = random_spd(rng, 5, complex=bool(rng.integers(2)))
        L = expmlog.logm_spd(P)
        assert linalg.self_adjoint_residual(L) <= 1e-12
        assert linalg.hs_norm(expm(L).value - P) <= 1e-9 * linalg.hs_norm(P)
    with pytest.raises(NotPositiveDefiniteError):
        expmlog.logm_spd(np.diag([1.0, -1.0]))


def test_logm_spd_inverts_expm_on_self_adjoint(rng):
    for _ in range(30):
        S = random_self_adjoint(rng, 4)
        S *= 3 / linalg.op_norm(S)
        assert linalg.hs_norm(expmlog.logm_spd(expm(S).value) - S) <= 1e-8 * linalg.hs_norm(S)


def test_logm_unitary_examples(rng):
    assert np.allclose(expmlog.logm_unitary(np.eye(2, dtype=complex)), 0, atol=1e-15)
    L = expmlog.logm_unitary(np.array([[1j]]))
    assert abs(L[0, 0] - 1j * math.pi / 2) <= 1e-15
    for _ in range(30):
        U = random_unitary(rng, 5)
        L = expmlog.logm_unitary(U)
        assert linalg.hs_norm(L + linalg.adjoint(L)) <= 1e-9
        assert linalg.hs_norm(expm(L).value - U) <= 1e-8
        # principal branch: spectrum of L within i(-pi, pi]
        assert linalg.op_norm(L) <= math.pi + 1e-9
    with pytest.raises(NotUnitaryError):
        expmlog.logm_unitary(2 * np.eye(2, dtype=complex))


def test_logm_special_orthogonal_examples(rng):
    assert np.allclose(expmlog.logm_special_orthogonal(np.eye(3)), 0, atol=1e-15)
    A = expmlog.logm_special_orthogonal(-np.eye(2))
    assert np.allclose(A, [[0, -math.pi], [math.pi, 0]], atol=1e-12)
    assert np.allclose(expm(A).value, -np.eye(2), atol=1e-12)
    for n in (3, 4, 5):
        for _ in range(10):
            R = random_special_orthogonal(rng, n, scale=2.0)
            A = expmlog.logm_special_orthogonal(R)
            assert np.max(np.abs(A + A.T)) <= 1e-12
            assert linalg.hs_norm(expm(A).value - R) <= 1e-8


def test_logm_special_orthogonal_minus_one_eigenspace(rng):
    Q = np.linalg.qr(rng.standard_normal((4, 4)))[0]
    R = Q @ np.diag([-1.0, -1, -1, -1]) @ Q.T
    A = expmlog.logm_special_orthogonal(R)
    assert linalg.hs_norm(expm(A).value - R) <= 1e-8
    R = Q @ np.diag([-1.0, -1, 1, 1]) @ Q.T
    A = expmlog.logm_special_orthogonal(R)
    assert linalg.hs_norm(expm(A).value - R) <= 1e-8


def test_logm_special_orthogonal_rejects_reflections():
    with pytest.raises(NoRealAntisymmetricLog):
        expmlog.logm_special_orthogonal(np.diag([1.0, -1.0]))
    with pytest.raises(NotUnitaryError):
        expmlog.logm_special_orthogonal(2 * np.eye(2))


def test_real_log_examples():
    rep = expmlog.real_log_exists(np.diag([-1.0, -2.0]))
    assert rep.exists_real is False and rep.obstruction is Obstruction.NEGATIVE_REAL_EIGENVALUE
    rep = expmlog.real_log_exists(-np.eye(2))
    assert rep.exists_real and rep.obstruction is Obstruction.NONE
    assert np.allclose(rep.value, [[0, -math.pi], [math.pi, 0]], atol=1e-12)
    rep = expmlog.real_log_exists(np.diag([1.0, 2.0]))
    assert rep.exists_real and np.allclose(rep.value, np.diag([0, math.log(2)]), atol=1e-12)


def test_real_log_singular():
    rep = expmlog.real_log_exists(np.array([[1.0, 2], [2, 4]]))
    assert not rep.exists_real and rep.obstruction is Obstruction.SINGULAR
    assert expmlog.real_log_exists(np.zeros((2, 2))).obstruction is Obstruction.SINGULAR


def test_real_log_negative_multiplicities(rng):
    Q = np.linalg.qr(rng.standard_normal((5, 5)))[0]
    B = Q @ np.diag([-1.0, -1, -1, 2, 3]) @ Q.T
    rep = expmlog.real_log_exists(B)
    assert not rep.exists_real and rep.obstruction is Obstruction.NEGATIVE_REAL_EIGENVALUE
    B = Q @ np.diag([-1.0, -1, -3, -3, 3]) @ Q.T
    rep = expmlog.real_log_exists(B)
    assert rep.exists_real and rep.residual <= 1e-8


def test_real_log_defective_negative_is_unsupported():
    with pytest.raises(UnsupportedError):
        expmlog.real_log_exists(np.array([[-1.0, 1], [0, -1]]))


def test_real_log_defective_positive_exists_without_value():
    rep = expmlog.real_log_exists(np.array([[2.0, 1], [0, 2]]))
    assert rep.exists_real and rep.value is None


def test_real_log_round_trip_on_exponentials(rng):
    # expm of a real matrix always has a real logarithm
    for _ in range(60):
        n = rng.integers(2, 6)
        A = random_with_op_norm(rng, n, rng.uniform(0.5, 3))
        rep = expmlog.real_log_exists(expm(A).value)
        assert rep.exists_real
        if rep.value is not None:
            assert rep.residual <= 1e-8
            assert not np.iscomplexobj(rep.value)


def test_exp_of_anti_self_adjoint_is_unitary(rng):
    for cplx in (False, True):
        A = random_antisymmetric(rng, 5, complex=cplx)
        assert linalg.unitary_residual(expm(A).value) <= 1e-9


@pytest.mark.parametrize("k", [2, 3, 4])
def test_real_log_similar_jordan_blocks_are_unsupported(rng, k):
    M = np.zeros((k + 1, k + 1))
    M[:k, :k] = -np.eye(k) + np.diag(np.ones(k - 1), 1)
    M[k, k] = 2.0
    for _ in range(20):
        V = rng.standard_normal((k + 1, k + 1))
        with pytest.raises(UnsupportedError):
            expmlog.real_log_exists(V @ M @ np.linalg.inv(V))


@pytest.mark.parametrize("eps", [1e-3, 1e-5])
def test_real_log_rotation_near_minus_identity(rng, eps):
    th = math.pi - eps
    M = np.zeros((3, 3))
    M[:2, :2] = [[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]]
    M[2, 2] = 2.0
    for _ in range(20):
        # the round-trip residual scales with cond(V) times the size of the log
        V = random_invertible(rng, 3, max_cond=100)
        rep = expmlog.real_log_exists(V @ M @ np.linalg.inv(V))
        assert rep.exists_real and rep.residual <= 1e-8


@pytest.mark.parametrize("gap", [1e-2, 1e-4, 1e-5])
def test_real_log_close_negative_eigenvalues(rng, gap):
    # two distinct simple negative eigenvalues: no real log, however close
    for _ in range(20):
        V = rng.standard_normal((3, 3))
        B = V @ np.diag([-1.0, -1.0 - gap, 2.0]) @ np.linalg.inv(V)
        rep = expmlog.real_log_exists(B)
        assert not rep.exists_real and rep.obstruction is Obstruction.NEGATIVE_REAL_EIGENVALUE


def test_real_log_repeated_negative_eigenvalue_similar(rng):
    for _ in range(20):
        V = rng.standard_normal((6, 6))
        B = V @ np.diag([-1.0] * 6) @ np.linalg.inv(V)
        rep = expmlog.real_log_exists(B)
        assert rep.exists_real and rep.residual <= 1e-8
