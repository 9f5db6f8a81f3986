"""Dense complex hermitian linear algebra with explicit tolerances.

All matrices are small (at most 81x81 here, operators up to 162x81), so
everything is plain dense numpy.  The real vectorization of hermitian space
uses a fixed orthonormal basis, documented at :func:`hermitian_to_real_vector`,
so that operator matrices are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class NumericalError(RuntimeError):
    """A computation failed to meet its numerical contract."""


@dataclass(frozen=True)
class Tolerance:
    """Thresholds for rank decisions and PSD checks.

    rank_rel is relative to the largest eigenvalue magnitude; psd_atol is the
    absolute slack allowed below zero (scaled by max(1, spectral norm)).
    """

    rank_rel: float = 1e-9
    psd_atol: float = 1e-9

    def __post_init__(self):
        if self.rank_rel <= 0 or self.psd_atol <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


def as_hermitian(A, atol: float = 1e-12) -> np.ndarray:
    """Validate that A is hermitian within atol and return its exact
    symmetrization (A + A^dagger)/2 as a fresh complex array."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ValueError("matrix entries must be finite")
    dev = np.max(np.abs(A - A.conj().T)) if A.size else 0.0
    scale = max(1.0, float(np.max(np.abs(A))) if A.size else 0.0)
    if dev > atol * scale:
        raise ValueError(f"matrix is not hermitian (deviation {dev:.3e})")
    return (A + A.conj().T) / 2


def eig_hermitian(H: np.ndarray):
    """Eigendecomposition of a hermitian matrix.

    Returns (eigenvalues, eigenvectors) with real eigenvalues in descending
    order and the matching orthonormal eigenvectors as columns.
    """
    H = as_hermitian(H)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    return w[::-1].copy(), V[:, ::-1].copy()


def rank_tol(H: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    """Numerical rank: eigenvalues above rank_rel * max |eigenvalue|."""
    w, _ = eig_hermitian(H)
    amax = np.max(np.abs(w)) if w.size else 0.0
    if amax == 0.0:
        return 0
    return int(np.count_nonzero(np.abs(w) > tol.rank_rel * amax))


def kernel_basis(H: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel of hermitian H."""
    w, V = eig_hermitian(H)
    amax = np.max(np.abs(w)) if w.size else 0.0
    keep = np.abs(w) <= tol.rank_rel * amax if amax > 0 else np.ones(w.shape, bool)
    return V[:, keep]


def range_projection(H: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projection onto the numerical range of hermitian H."""
    w, V = eig_hermitian(H)
    amax = np.max(np.abs(w)) if w.size else 0.0
    keep = np.abs(w) > tol.rank_rel * amax if amax > 0 else np.zeros(w.shape, bool)
    R = V[:, keep]
    return as_hermitian(R @ R.conj().T)


def range_basis(H: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical range of hermitian H."""
    w, V = eig_hermitian(H)
    amax = np.max(np.abs(w)) if w.size else 0.0
    keep = np.abs(w) > tol.rank_rel * amax if amax > 0 else np.zeros(w.shape, bool)
    return V[:, keep]


def is_psd(H: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the minimum eigenvalue is >= -psd_atol * max(1, spectral norm)."""
    w, _ = eig_hermitian(H)
    if w.size == 0:
        return True
    scale = max(1.0, float(np.max(np.abs(w))))
    return bool(w[-1] >= -tol.psd_atol * scale)


def hermitian_to_real_vector(H: np.ndarray) -> np.ndarray:
    """Coordinates of hermitian H in the fixed orthonormal real basis.

    Basis order for dimension d (total d^2 elements):
      1. diagonal units E_ii, i = 0..d-1;
      2. symmetric off-diagonals (E_ij + E_ji)/sqrt(2), i < j, row-major;
      3. antisymmetric off-diagonals i(E_ij - E_ji)/sqrt(2), i < j, row-major.

    The map is an isometry: Tr(XY) equals the Euclidean dot product of the
    coordinate vectors.
    """
    H = as_hermitian(H)
    d = H.shape[0]
    iu = np.triu_indices(d, k=1)
    sq2 = np.sqrt(2.0)
    return np.concatenate([
        np.diag(H).real,
        sq2 * H[iu].real,
        sq2 * H[iu].imag,
    ])


def real_vector_to_hermitian(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`hermitian_to_real_vector` for the documented basis."""
    v = np.asarray(v, dtype=float)
    if v.shape != (dim * dim,):
        raise ValueError(f"expected vector of length {dim * dim}, got {v.shape}")
    H = np.zeros((dim, dim), dtype=complex)
    H[np.diag_indices(dim)] = v[:dim]
    iu = np.triu_indices(dim, k=1)
    noff = iu[0].size
    off = (v[dim:dim + noff] + 1j * v[dim + noff:]) / np.sqrt(2.0)
    H[iu] = off
    H[(iu[1], iu[0])] = off.conj()
    return H


def _real_basis_matrices(dim: int):
    for k in range(dim * dim):
        e = np.zeros(dim * dim)
        e[k] = 1.0
        yield real_vector_to_hermitian(e, dim)


@dataclass(frozen=True)
class RealLinearOperator:
    """A real matrix acting on the real vectorization of hermitian space."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.shape != (self.dim, self.dim):
            raise ValueError("operator matrix has wrong shape")
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("operator entries must be finite")


def real_operator_matrix(f, dim: int, check_linearity: bool = True) -> RealLinearOperator:
    """Matrix of a real-linear map on hermitian matrices of size dim.

    f takes and returns a hermitian ndarray.  A spot check of real linearity
    on random samples guards against accidentally nonlinear callables.
    """
    if check_linearity:
        rng = np.random.default_rng(0)
        for _ in range(3):
            X = as_hermitian(_random_hermitian(dim, rng))
            Y = as_hermitian(_random_hermitian(dim, rng))
            lhs = f(X + Y)
            rhs = f(X) + f(Y)
            scale = max(1.0, float(np.max(np.abs(rhs))))
            if np.max(np.abs(lhs - rhs)) > 1e-8 * scale:
                raise NumericalError("map is not real-linear on hermitian space")
    cols = [hermitian_to_real_vector(f(B)) for B in _real_basis_matrices(dim)]
    return RealLinearOperator(dim * dim, np.column_stack(cols))


def _random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (A + A.conj().T) / 2


def numerical_kernel(M: np.ndarray, rel_cutoff: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel of a real or
    complex rectangular matrix, via SVD with a relative singular-value cutoff."""
    M = np.asarray(M)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    smax = s[0] if s.size else 0.0
    nkeep = int(np.count_nonzero(s > rel_cutoff * smax)) if smax > 0 else 0
    return Vh[nkeep:].conj().T


def numerical_rank(M: np.ndarray, rel_cutoff: float = 1e-9) -> int:
    """Numerical rank of a rectangular matrix via SVD."""
    s = np.linalg.svd(np.asarray(M), compute_uv=False)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_cutoff * smax))
