import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pptgeo.extremality import (
    appendix_basis_X,
    appendix_basis_Y,
    basis_span_rank,
    face_of,
    is_extreme_in_T,
    kernel_intersection_dim_oracle,
    phi_D_operator,
    phi_E_operator,
    verify_combination_identity,
)
from pptgeo.linalg import hermitian_to_real_vector, numerical_rank
from pptgeo.states import (
    BipartiteMatrix,
    combine,
    kernel_vectors_w,
    partial_transpose,
    rho,
    sigma,
)

GENERIC = [(2.0, math.pi / 6), (0.5, -1.1), (1.3, 2.0), (4.0, 5 * math.pi / 12)]
# the appendix bases are written for angles on the open arc (0, pi/3)
ZERO_ARC = [(2.0, math.pi / 6), (0.5, 0.3), (1.3, 1.0)]


class TestFace:
    def test_projection_ranks(self):
        for b, th in GENERIC:
            face = face_of(rho(b, th))
            assert np.trace(face.D @ face.D.conj().T).real == pytest.approx(5.0, abs=1e-9)
            assert np.trace(face.E @ face.E.conj().T).real == pytest.approx(5.0, abs=1e-9)

    def test_p_d_annihilates_kernel(self):
        for b, th in GENERIC:
            face = face_of(rho(b, th))
            for w in kernel_vectors_w(b, th):
                assert np.linalg.norm(face.D @ face.D.conj().T @ w) <= 1e-9 * np.linalg.norm(w)


class TestPhiOperators:
    def test_phi_d_kills_state(self):
        for b, th in GENERIC:
            X = rho(b, th)
            op = phi_D_operator(face_of(X).D)
            v = hermitian_to_real_vector(X.data)
            assert np.linalg.norm(op.matrix @ v) <= 1e-9 * np.linalg.norm(v)

    def test_phi_e_kills_state(self):
        for b, th in GENERIC:
            X = rho(b, th)
            op = phi_E_operator(face_of(X).E, 3, 3)
            v = hermitian_to_real_vector(X.data)
            assert np.linalg.norm(op.matrix @ v) <= 1e-9 * np.linalg.norm(v)

    def test_kernel_dims_generic(self):
        for b, th in GENERIC:
            face = face_of(rho(b, th))
            opD = phi_D_operator(face.D)
            opE = phi_E_operator(face.E, 3, 3)
            sD = np.linalg.svd(opD.matrix, compute_uv=False)
            sE = np.linalg.svd(opE.matrix, compute_uv=False)
            assert np.sum(sD <= 1e-9 * sD[0]) == 25
            assert np.sum(sE <= 1e-9 * sE[0]) == 25

    def test_phi_d_is_compression_minus_identity(self):
        rng = np.random.default_rng(1)
        b, th = 2.0, math.pi / 6
        D = face_of(rho(b, th)).D
        P = D @ D.conj().T
        op = phi_D_operator(D)
        A = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        H = (A + A.conj().T) / 2
        lhs = op.matrix @ hermitian_to_real_vector(H)
        rhs = hermitian_to_real_vector(P @ H @ P - H)
        assert_allclose(lhs, rhs, atol=1e-10)


class TestExtremality:
    @pytest.mark.parametrize("b,theta", GENERIC)
    def test_rho_extreme(self, b, theta):
        rep = is_extreme_in_T(rho(b, theta))
        assert rep.is_extreme
        assert rep.dim_ker_D == 25
        assert rep.dim_ker_E == 25
        assert rep.dim_intersection == 1
        g = rep.generator.data
        target = rho(b, theta).data / np.trace(rho(b, theta).data).real
        assert np.max(np.abs(g - target)) <= 1e-8

    def test_matches_oracle(self):
        for b, th in GENERIC:
            X = rho(b, th)
            face = face_of(X)
            rep = is_extreme_in_T(X)
            oracle = kernel_intersection_dim_oracle(
                phi_D_operator(face.D), phi_E_operator(face.E, 3, 3)
            )
            assert rep.dim_intersection == oracle

    def test_sigma_not_extreme(self):
        rep = is_extreme_in_T(sigma(2, math.pi / 6))
        assert not rep.is_extreme
        assert rep.dim_intersection > 1

    def test_identity_not_extreme(self):
        X = BipartiteMatrix(3, 3, np.eye(9) / 9)
        rep = is_extreme_in_T(X)
        assert not rep.is_extreme

    def test_mixture_not_extreme(self):
        X = combine([rho(2, math.pi / 6), rho(1, 5 * math.pi / 6)], [0.5, 0.5])
        assert not is_extreme_in_T(X).is_extreme

    def test_boundary_angle_rho_extreme(self):
        rep = is_extreme_in_T(rho(1, math.pi))
        assert not rep.is_extreme


class TestAppendixBases:
    def test_counts(self):
        b, th = 2.0, math.pi / 6
        assert len(appendix_basis_X(b, th)) == 25
        assert len(appendix_basis_Y(b, th)) == 25

    @pytest.mark.parametrize("b,theta", ZERO_ARC)
    def test_x_in_ker_phi_d(self, b, theta):
        face = face_of(rho(b, theta))
        op = phi_D_operator(face.D)
        for k, X in enumerate(appendix_basis_X(b, theta)):
            v = hermitian_to_real_vector(X)
            r = np.linalg.norm(op.matrix @ v) / np.linalg.norm(v)
            assert r <= 1e-9, f"X{k + 1} residual {r:.3e}"

    @pytest.mark.parametrize("b,theta", ZERO_ARC)
    def test_y_in_ker_phi_e(self, b, theta):
        face = face_of(rho(b, theta))
        op = phi_E_operator(face.E, 3, 3)
        for k, Y in enumerate(appendix_basis_Y(b, theta)):
            v = hermitian_to_real_vector(Y)
            r = np.linalg.norm(op.matrix @ v) / np.linalg.norm(v)
            assert r <= 1e-9, f"Y{k + 1} residual {r:.3e}"

    def test_span_ranks(self):
        b, th = 2.0, math.pi / 6
        assert basis_span_rank(appendix_basis_X(b, th)) == 25
        assert basis_span_rank(appendix_basis_Y(b, th)) == 25

    def test_x_spans_full_kernel(self):
        b, th = 0.5, 0.3
        op = phi_D_operator(face_of(rho(b, th)).D)
        cols = np.column_stack(
            [hermitian_to_real_vector(X) for X in appendix_basis_X(b, th)]
        )
        # every appendix vector already checked in-kernel; rank 25 = dim Ker
        assert numerical_rank(cols, 1e-9) == 25
        s = np.linalg.svd(op.matrix, compute_uv=False)
        assert np.sum(s <= 1e-9 * s[0]) == 25

    def test_hermitian(self):
        for M in appendix_basis_X(1.7, 0.9) + appendix_basis_Y(1.7, 0.9):
            assert np.max(np.abs(M - M.conj().T)) <= 1e-12


class TestCombinationIdentity:
    @pytest.mark.parametrize("b,theta", [(2.0, math.pi / 6), (0.7, -0.3), (1.0, 1.0)])
    def test_zero_arc(self, b, theta):
        rep = verify_combination_identity(b, theta)
        assert rep.ok
        assert rep.x_residual <= 1e-10
        assert rep.y_residual_last_y7 <= 1e-10
        assert rep.y_residual_last_x7 > 1e-2

    def test_fails_off_zero_arc(self):
        rep = verify_combination_identity(2.0, math.pi / 2)
        assert not rep.ok
