import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pptgeo.linalg import (
    DEFAULT_TOL,
    NumericalError,
    Tolerance,
    as_hermitian,
    eig_hermitian,
    hermitian_to_real_vector,
    is_psd,
    kernel_basis,
    range_projection,
    rank_tol,
    real_operator_matrix,
    real_vector_to_hermitian,
)
from pptgeo.states import p_theta, rho


def random_hermitian(dim, rng):
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (A + A.conj().T) / 2


def charpoly_roots(H):
    """Eigenvalues via the Faddeev-LeVerrier trace recursion and np.roots;
    independent of the eigh path under test."""
    H = np.asarray(H)
    d = H.shape[0]
    coeffs = [1.0]
    M = np.zeros_like(H)
    for k in range(1, d + 1):
        M = H @ M + coeffs[-1] * np.eye(d)
        coeffs.append(-np.trace(H @ M).real / k)
    return np.roots(coeffs)


class TestEig:
    def test_identity(self):
        w, V = eig_hermitian(np.eye(3))
        assert_allclose(w, [1, 1, 1])
        assert_allclose(V.conj().T @ V, np.eye(3), atol=1e-12)

    def test_diagonal(self):
        w, _ = eig_hermitian(np.diag([2.0, 0.0, -1.0]))
        assert_allclose(w, [2, 0, -1], atol=1e-14)

    def test_residuals_random(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            H = random_hermitian(6, rng)
            w, V = eig_hermitian(H)
            scale = np.max(np.abs(w))
            for i in range(6):
                assert np.linalg.norm(H @ V[:, i] - w[i] * V[:, i]) <= 1e-9 * scale
            assert np.max(np.abs(V.conj().T @ V - np.eye(6))) <= 1e-8

    def test_rho_spectrum_against_charpoly_oracle(self):
        H = rho(2, math.pi / 6).data
        H = H / np.trace(H).real
        w, _ = eig_hermitian(H)
        oracle = np.sort(charpoly_roots(H).real)[::-1]
        # np.roots degrades to ~eps**(1/k) accuracy at a k-fold root, so the
        # comparison tolerance must be loose at the repeated eigenvalues
        assert_allclose(w, oracle, atol=1e-4)
        assert np.count_nonzero(np.abs(w) > 1e-9) == 5
        assert np.count_nonzero(np.abs(w) <= 1e-9) == 4

    def test_not_hermitian_rejected(self):
        with pytest.raises(ValueError):
            eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestRankKernel:
    def test_zero_matrix(self):
        assert rank_tol(np.zeros((4, 4))) == 0
        assert kernel_basis(np.zeros((4, 4))).shape[1] == 4

    def test_rank_one_projector(self):
        P = np.zeros((9, 9))
        P[0, 0] = 1.0
        assert rank_tol(P) == 1

    def test_rho_rank(self):
        assert rank_tol(rho(2, math.pi / 6).data) == 5

    def test_rho_1_pi_kernel_dim(self):
        K = kernel_basis(rho(1, math.pi).data)
        assert K.shape[1] == 5

    def test_identity_kernel_empty(self):
        assert kernel_basis(np.eye(5)).shape[1] == 0

    def test_rank_plus_kernel_is_dim(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            H = random_hermitian(5, rng)
            # randomly squash some eigenvalues to zero
            w, V = eig_hermitian(H)
            w[rng.random(5) < 0.4] = 0.0
            H = as_hermitian((V * w) @ V.conj().T)
            assert rank_tol(H) + kernel_basis(H).shape[1] == 5


class TestRangeProjection:
    def test_identity(self):
        assert_allclose(range_projection(np.eye(4)), np.eye(4), atol=1e-12)

    def test_rank_one(self):
        rng = np.random.default_rng(5)
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        v /= np.linalg.norm(v)
        P = np.outer(v, v.conj())
        assert_allclose(range_projection(P), P, atol=1e-12)

    def test_idempotent_hermitian(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            H = random_hermitian(6, rng)
            P = range_projection(H)
            assert np.max(np.abs(P @ P - P)) <= 1e-9
            assert np.max(np.abs(P - P.conj().T)) <= 1e-9
            assert np.max(np.abs(P @ H - H)) <= 1e-8 * np.linalg.norm(H)

    def test_rho_range_projection_explicit(self):
        # closed form for the family's range projection at generic parameters
        b, th = 2.0, math.pi / 6
        P = range_projection(rho(b, th).data)
        d = 1.0 + b * b
        z = b * np.exp(1j * th)
        expected = np.zeros((9, 9), dtype=complex)
        for i, j in ((0, 0), (4, 4), (8, 8)):
            expected[i, j] = 2 / 3
        for i, j in ((0, 4), (4, 0), (0, 8), (8, 0), (4, 8), (8, 4)):
            expected[i, j] = -1 / 3
        expected[1, 1] = expected[5, 5] = expected[6, 6] = 1 / d
        expected[2, 2] = expected[3, 3] = expected[7, 7] = b * b / d
        for i, j in ((1, 3), (5, 7)):
            expected[i, j] = -np.conj(z) / d
            expected[j, i] = -z / d
        expected[2, 6] = -z / d
        expected[6, 2] = -np.conj(z) / d
        assert_allclose(P, expected, atol=1e-10)


class TestVectorization:
    def test_e11_in_m2(self):
        E11 = np.diag([1.0, 0.0])
        assert_allclose(hermitian_to_real_vector(E11), [1, 0, 0, 0])

    def test_round_trip(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            H = random_hermitian(4, rng)
            v = hermitian_to_real_vector(H)
            assert_allclose(real_vector_to_hermitian(v, 4), H, atol=1e-13)

    def test_isometry(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            X = random_hermitian(5, rng)
            Y = random_hermitian(5, rng)
            dot = hermitian_to_real_vector(X) @ hermitian_to_real_vector(Y)
            tr = np.trace(X @ Y).real
            assert abs(tr - dot) <= 1e-10 * np.linalg.norm(X) * np.linalg.norm(Y)


class TestRealOperatorMatrix:
    def test_identity_map_exact(self):
        op = real_operator_matrix(lambda X: X, 3)
        assert np.array_equal(op.matrix, np.eye(9))

    def test_negation(self):
        op = real_operator_matrix(lambda X: -X, 2)
        assert np.array_equal(op.matrix, -np.eye(4))

    def test_nonlinear_rejected(self):
        with pytest.raises(NumericalError):
            real_operator_matrix(lambda X: X @ X, 3)


class TestIsPsd:
    def test_identity(self):
        assert is_psd(np.eye(3))

    def test_indefinite(self):
        assert not is_psd(np.diag([1.0, -1.0]))

    def test_circulant_at_p_theta(self):
        th = math.pi / 6
        a = p_theta(th)
        e = np.exp(1j * th)
        C = np.array([
            [a, -e, -np.conj(e)],
            [-np.conj(e), a, -e],
            [-e, -np.conj(e), a],
        ])
        assert is_psd(C)
        w, _ = eig_hermitian(C)
        assert abs(w[-1]) <= 1e-9


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(rank_rel=0.0)
    with pytest.raises(ValueError):
        Tolerance(psd_atol=-1.0)
    assert DEFAULT_TOL.rank_rel == 1e-9
