"""Bipartite state families, partial transpose, and interior/boundary tests.

The two 3x3 families rho(b, theta) and sigma(b, theta) are kept unnormalized
(trace 3*(p_theta + b + 1/b)); use :func:`normalize` when a unit-trace state
is needed.  Composite indexing is A-major: |i> tensor |j> sits at i*n + j.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_hermitian,
    eig_hermitian,
    is_psd,
    kernel_basis,
    rank_tol,
)


@dataclass(frozen=True)
class BipartiteMatrix:
    """An mn x mn hermitian matrix tagged with its local dimensions."""

    m: int
    n: int
    data: np.ndarray

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("local dimensions must be positive")
        data = as_hermitian(self.data)
        if data.shape != (self.m * self.n, self.m * self.n):
            raise ValueError(
                f"data must be {self.m * self.n}x{self.m * self.n}, got {data.shape}"
            )
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def dim(self) -> int:
        return self.m * self.n


class Arc(enum.Enum):
    """Position of exp(i*theta) on the unit circle, split at multiples of pi/3."""

    MINUS = "minus"      # theta in (-pi, -pi/3)
    ZERO = "zero"        # theta in (-pi/3, pi/3)
    PLUS = "plus"        # theta in (pi/3, pi)
    BOUNDARY = "boundary"  # theta = n*pi/3 for an integer n


@dataclass(frozen=True)
class StateType:
    """Rank pair (rank of X, rank of the partial transpose of X)."""

    p: int
    q: int


def p_theta(theta: float) -> float:
    """The smallest a making the 3x3 circulant with off-diagonals -e^{+-i theta}
    positive semidefinite; equals max_k 2cos(theta + 2k pi/3), in [1, 2]."""
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    return max(2.0 * math.cos(theta + 2.0 * math.pi * k / 3.0) for k in (-1, 0, 1))


# Positions (1-based composite indices) carrying -e^{i theta}; the hermitian
# partners carry -e^{-i theta}.
_RHO_PHASE_POSITIONS = ((1, 5), (5, 9), (9, 1), (3, 7), (4, 2), (8, 6))
_SIGMA_PHASE_POSITIONS = ((1, 5), (5, 9), (9, 1))


def _family(b: float, theta: float, positions) -> BipartiteMatrix:
    if b <= 0:
        raise ValueError("b must be positive")
    p = p_theta(theta)
    diag = np.array([p, 1 / b, b, b, p, 1 / b, 1 / b, b, p])
    M = np.diag(diag).astype(complex)
    z = -np.exp(1j * theta)
    for i, j in positions:
        M[i - 1, j - 1] = z
        M[j - 1, i - 1] = np.conj(z)
    return BipartiteMatrix(3, 3, M)


def rho(b: float, theta: float) -> BipartiteMatrix:
    """The unnormalized 3x3-bipartite state rho(b, theta); equals its own
    partial transpose."""
    return _family(b, theta, _RHO_PHASE_POSITIONS)


def sigma(b: float, theta: float) -> BipartiteMatrix:
    """The unnormalized companion state with phases only on the (1,5), (5,9),
    (9,1) couplings; rho = sigma + sigma^Gamma - Diag(sigma)."""
    return _family(b, theta, _SIGMA_PHASE_POSITIONS)


def partial_transpose(X: BipartiteMatrix) -> BipartiteMatrix:
    """Transpose on the first tensor factor only.

    Viewing the matrix as an m x m grid of n x n blocks, block (i, k) moves to
    (k, i) with its interior unchanged.  With this convention rho(b, theta) is
    fixed and rho = sigma + sigma^Gamma - Diag(sigma) holds entrywise.
    Transposing the other factor instead gives the entrywise conjugate, so
    spectra, ranks and PPT verdicts are identical either way.
    """
    m, n = X.m, X.n
    T = X.data.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)
    return BipartiteMatrix(m, n, T)


def state_type(X: BipartiteMatrix, tol: Tolerance = DEFAULT_TOL) -> StateType:
    """Rank pair of a PPT state and its partial transpose."""
    if not is_psd(X.data, tol):
        raise ValueError("state_type requires a PSD input")
    return StateType(rank_tol(X.data, tol), rank_tol(partial_transpose(X).data, tol))


def is_ppt(X: BipartiteMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    """PSD together with PSD partial transpose."""
    return is_psd(X.data, tol) and is_psd(partial_transpose(X).data, tol)


def reduce_theta(theta: float) -> float:
    """Reduce theta modulo 2*pi into (-pi, pi]."""
    t = math.remainder(theta, math.tau)
    if t <= -math.pi:
        t = math.pi
    return t


def arc_of(theta: float, atol: float = 1e-12) -> Arc:
    """Classify theta into the three open arcs, or BOUNDARY at n*pi/3."""
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    if abs(math.remainder(theta, math.pi / 3.0)) <= atol:
        return Arc.BOUNDARY
    t = reduce_theta(theta)
    if t < -math.pi / 3.0:
        return Arc.MINUS
    if t < math.pi / 3.0:
        return Arc.ZERO
    return Arc.PLUS


def kernel_vectors_w(b: float, theta: float) -> list[np.ndarray]:
    """The explicit kernel vectors of rho(b, theta): w_1, w_2, w_3 always,
    plus the arc-dependent w_-, w_0, or w_+ away from boundary angles."""
    if b <= 0:
        raise ValueError("b must be positive")
    e = np.exp(1j * theta)
    vecs = [
        np.array([0, b, 0, e, 0, 0, 0, 0, 0], dtype=complex),
        np.array([0, 0, 0, 0, 0, b, 0, e, 0], dtype=complex),
        np.array([0, 0, e, 0, 0, 0, b, 0, 0], dtype=complex),
    ]
    w = np.exp(2j * math.pi / 3.0)
    arc = arc_of(theta)
    if arc is Arc.MINUS:
        vecs.append(np.array([1, 0, 0, 0, w, 0, 0, 0, np.conj(w)], dtype=complex))
    elif arc is Arc.ZERO:
        vecs.append(np.array([1, 0, 0, 0, 1, 0, 0, 0, 1], dtype=complex))
    elif arc is Arc.PLUS:
        vecs.append(np.array([1, 0, 0, 0, np.conj(w), 0, 0, 0, w], dtype=complex))
    return vecs


def combine(states: list[BipartiteMatrix], weights) -> BipartiteMatrix:
    """Convex combination sum_i w_i X_i of equally shaped states."""
    if not states:
        raise ValueError("need at least one state")
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (len(states),):
        raise ValueError("one weight per state required")
    if np.any(weights < 0):
        raise ValueError("weights must be nonnegative")
    if abs(weights.sum() - 1.0) > 1e-12:
        raise ValueError("weights must sum to 1")
    m, n = states[0].m, states[0].n
    if any(X.m != m or X.n != n for X in states):
        raise ValueError("all states must share local dimensions")
    acc = sum(w * X.data for w, X in zip(weights, states))
    return BipartiteMatrix(m, n, acc)


def normalize(X: BipartiteMatrix) -> BipartiteMatrix:
    """Scale to unit trace."""
    tr = float(np.trace(X.data).real)
    if tr <= 0:
        raise ValueError("trace must be positive to normalize")
    return BipartiteMatrix(X.m, X.n, X.data / tr)


_PHASE_U = np.diag([1.0, np.exp(-2j * math.pi / 3.0), np.exp(2j * math.pi / 3.0)])


def conjugate_by_phase_unitary(X: BipartiteMatrix) -> BipartiteMatrix:
    """Conjugate by I tensor U with U = Diag(1, e^{-2pi i/3}, e^{2pi i/3});
    shifts the theta parameter of rho/sigma by -2pi/3."""
    if (X.m, X.n) != (3, 3):
        raise ValueError("phase-unitary conjugation is defined for 3x3 systems")
    IU = np.kron(np.eye(3), _PHASE_U)
    return BipartiteMatrix(3, 3, IU.conj().T @ X.data @ IU)


def is_interior_of_T(X: BipartiteMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Interior of the PPT convex body: both ranges are the full space."""
    if not is_ppt(X, tol):
        raise ValueError("is_interior_of_T requires a PPT input")
    st = state_type(X, tol)
    return st.p == X.dim and st.q == X.dim


def is_interior_of_S_sufficient(X: BipartiteMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Sufficient interior test for the separable body: diagonal with strictly
    positive diagonal entries.  False means undecided, not "boundary"."""
    A = X.data
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    off = A - np.diag(np.diag(A))
    if np.max(np.abs(off)) > 1e-12 * max(scale, 1e-300):
        return False
    return bool(np.all(np.diag(A).real > tol.psd_atol))


def product_state(xi, eta) -> BipartiteMatrix:
    """Unit-trace projector onto xi tensor eta."""
    xi = np.asarray(xi, dtype=complex).ravel()
    eta = np.asarray(eta, dtype=complex).ravel()
    if np.linalg.norm(xi) == 0 or np.linalg.norm(eta) == 0:
        raise ValueError("product vectors must be nonzero")
    v = np.kron(xi, eta)
    v = v / np.linalg.norm(v)
    return BipartiteMatrix(xi.size, eta.size, np.outer(v, v.conj()))


def verify_product_decomposition(X: BipartiteMatrix, parts, tol_rel: float = 1e-8) -> bool:
    """Check X = sum_i w_i |xi_i (x) eta_i><...| with the raw (unnormalized)
    product vectors; comparison is relative to the Frobenius norm of X."""
    acc = np.zeros_like(X.data)
    for xi, eta, weight in parts:
        if weight <= 0:
            raise ValueError("weights must be positive")
        v = np.kron(np.asarray(xi, dtype=complex).ravel(),
                    np.asarray(eta, dtype=complex).ravel())
        acc = acc + weight * np.outer(v, v.conj())
    scale = np.linalg.norm(X.data)
    return bool(np.linalg.norm(X.data - acc) <= tol_rel * max(scale, 1e-300))


def product_decomposition_rho_1_pi() -> list[tuple[np.ndarray, np.ndarray, float]]:
    """The four real product vectors decomposing rho(1, pi), weight 1/4 each."""
    signs = [(1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)]
    return [(np.array(s, dtype=complex), np.array(s, dtype=complex), 0.25) for s in signs]


def search_product_vector_in_subspace(
    D: np.ndarray,
    m: int,
    n: int,
    restarts: int = 100,
    seed: int = 0,
    residual_tol: float = 1e-7,
):
    """Heuristic search for a product vector xi (x) eta inside the span of the
    orthonormal columns D of C^m (x) C^n.

    Multi-start alternating maximization of <xi (x) eta| P |xi (x) eta> by
    top-eigenvector updates in xi and eta.  Returns (xi, eta) with
    ||(I - P)(xi (x) eta)|| <= residual_tol, or None.  A None result is not a
    proof that no product vector exists.
    """
    D = np.asarray(D, dtype=complex)
    if D.ndim != 2 or D.shape[0] != m * n:
        raise ValueError("D must have m*n rows of orthonormal columns")
    P = (D @ D.conj().T).reshape(m, n, m, n)
    rng = np.random.default_rng(seed)
    best = None
    best_val = -1.0
    for _ in range(restarts):
        xi = rng.normal(size=m) + 1j * rng.normal(size=m)
        eta = rng.normal(size=n) + 1j * rng.normal(size=n)
        xi /= np.linalg.norm(xi)
        eta /= np.linalg.norm(eta)
        val = 0.0
        for _ in range(200):
            A = np.einsum("j,ijkl,l->ik", eta.conj(), P, eta)
            w, V = np.linalg.eigh((A + A.conj().T) / 2)
            xi = V[:, -1]
            B = np.einsum("i,ijkl,k->jl", xi.conj(), P, xi)
            w, V = np.linalg.eigh((B + B.conj().T) / 2)
            eta = V[:, -1]
            new_val = float(w[-1].real)
            if new_val - val < 1e-15:
                val = new_val
                break
            val = new_val
        if val > best_val:
            best_val = val
            best = (xi, eta)
        if 1.0 - best_val <= residual_tol**2:
            return best
    if best is not None and 1.0 - best_val <= residual_tol**2:
        return best
    return None
