"""Positive and decomposable maps via Choi matrices.

A map phi: M_m -> M_n is stored as its Choi matrix
C = sum_ij E_ij (x) phi(E_ij), an mn x mn bipartite hermitian matrix.
Decomposable maps are built from the Kraus-like pieces
phi_V: X -> V* X V and phi^W: X -> W* X^t W; the generating matrices are kept
alongside the Choi form since decomposability is not recoverable from the
Choi matrix alone.

Conjugation convention: bars on xi and eta in the product-state pairing
formula mean entrywise complex conjugation in the computational basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import NumericalError
from .states import BipartiteMatrix, p_theta


@dataclass(frozen=True)
class ChoiMap:
    """A hermiticity-preserving linear map M_m -> M_n as its Choi matrix."""

    m: int
    n: int
    choi: BipartiteMatrix

    def __post_init__(self):
        if (self.choi.m, self.choi.n) != (self.m, self.n):
            raise ValueError("Choi matrix dimensions disagree with the map's")


@dataclass(frozen=True)
class DecomposableSpec:
    """Generators of a decomposable map: sum_i phi_{V_i} + sum_j phi^{W_j}."""

    Vs: tuple = field(default_factory=tuple)
    Ws: tuple = field(default_factory=tuple)

    def __post_init__(self):
        Vs = tuple(np.asarray(V, dtype=complex) for V in self.Vs)
        Ws = tuple(np.asarray(W, dtype=complex) for W in self.Ws)
        if not Vs and not Ws:
            raise ValueError("spec needs at least one generating matrix")
        shapes = {M.shape for M in Vs + Ws}
        if len(shapes) != 1 or any(len(s) != 2 for s in shapes):
            raise ValueError("all generating matrices must share one m x n shape")
        object.__setattr__(self, "Vs", Vs)
        object.__setattr__(self, "Ws", Ws)

    @property
    def shape(self):
        return (self.Vs + self.Ws)[0].shape


def choi_of(action, m: int, n: int) -> ChoiMap:
    """Assemble the Choi matrix of a map given by its action on matrix units.

    action(E) takes an m x m matrix unit and returns the n x n image.
    """
    C = np.zeros((m * n, m * n), dtype=complex)
    for i in range(m):
        for j in range(m):
            E = np.zeros((m, m), dtype=complex)
            E[i, j] = 1.0
            img = np.asarray(action(E), dtype=complex)
            if img.shape != (n, n):
                raise ValueError(f"image must be {n}x{n}, got {img.shape}")
            C[i * n:(i + 1) * n, j * n:(j + 1) * n] = img
    return ChoiMap(m, n, BipartiteMatrix(m, n, C))


def apply_map(phi: ChoiMap, X) -> np.ndarray:
    """Reconstruct phi(X) from the Choi matrix: phi(X) = sum_ij X_ij * block_ij."""
    X = np.asarray(X, dtype=complex)
    if X.shape != (phi.m, phi.m):
        raise ValueError(f"input must be {phi.m}x{phi.m}, got {X.shape}")
    Cr = phi.choi.data.reshape(phi.m, phi.n, phi.m, phi.n)
    return np.einsum("ij,iajb->ab", X, Cr)


def pairing(rho: BipartiteMatrix, phi: ChoiMap) -> float:
    """Duality pairing Tr(rho * C_phi^t) between states and maps."""
    if (rho.m, rho.n) != (phi.m, phi.n):
        raise ValueError("state and map live on different systems")
    val = complex(np.trace(rho.data @ phi.choi.data.T))
    scale = max(1.0, abs(val))
    if abs(val.imag) > 1e-10 * scale:
        raise NumericalError(f"pairing has a nonreal value {val}")
    return val.real


def identity_map(n: int) -> ChoiMap:
    return choi_of(lambda E: E, n, n)


def transpose_map(n: int) -> ChoiMap:
    return choi_of(lambda E: E.T, n, n)


def trace_map(m: int, n: int) -> ChoiMap:
    return choi_of(lambda E: np.trace(E) * np.eye(n, dtype=complex), m, n)


def phi_theta_coefficients(theta: float, t: float):
    """The diagonal coefficients (a, b, c) of the one-parameter positive map
    family; they always sum to p_theta."""
    if t <= 0:
        raise ValueError("t must be positive")
    p = p_theta(theta)
    den = 1.0 - t + t * t
    a = 1.0 - (p - 1.0) * t / den
    b = (p - 1.0) * t * t / den
    c = (p - 1.0) / den
    return a, b, c


def phi_theta_t(theta: float, t: float) -> ChoiMap:
    """The positive map on M_3 with cyclically arranged diagonal coefficients
    a(t), b(t), c(t) and off-diagonal phases -e^{+-i theta}."""
    a, b, c = phi_theta_coefficients(theta, t)
    e = np.exp(1j * theta)
    ec = np.conj(e)
    diag_images = {
        (0, 0): np.diag([a, c, b]),
        (1, 1): np.diag([b, a, c]),
        (2, 2): np.diag([c, b, a]),
    }
    phases = {(0, 1): -e, (1, 0): -ec, (0, 2): -ec, (2, 0): -e, (1, 2): -e, (2, 1): -ec}

    def action(E):
        i, j = map(int, np.argwhere(E)[0])
        if i == j:
            return diag_images[(i, i)].astype(complex)
        out = np.zeros((3, 3), dtype=complex)
        out[i, j] = phases[(i, j)]
        return out

    return choi_of(action, 3, 3)


def antipodal_sum_choi(theta: float, t: float, s: float) -> ChoiMap:
    """Choi matrix of the sum of the maps at theta and theta + pi.

    The off-diagonal phases cancel, leaving a diagonal Choi matrix with
    strictly positive entries: a sufficient certificate for the interior of
    the positive-map cone.
    """
    C = phi_theta_t(theta, t).choi.data + phi_theta_t(theta + math.pi, s).choi.data
    off = C - np.diag(np.diag(C))
    if np.max(np.abs(off)) > 1e-12:
        raise NumericalError("antipodal Choi sum is not diagonal")
    if np.any(np.diag(C).real <= 0):
        raise NumericalError("antipodal Choi sum has a nonpositive diagonal entry")
    C = np.diag(np.diag(C).real).astype(complex)
    return ChoiMap(3, 3, BipartiteMatrix(3, 3, C))


def is_interior_of_P_sufficient(phi: ChoiMap, atol: float = 1e-12) -> bool:
    """Sufficient interior test for the positive-map cone: diagonal Choi
    matrix with strictly positive diagonal.  False means undecided."""
    C = phi.choi.data
    off = C - np.diag(np.diag(C))
    scale = max(1.0, float(np.max(np.abs(C))))
    if np.max(np.abs(off)) > atol * scale:
        return False
    return bool(np.all(np.diag(C).real > 0))


def decomposable_map(spec: DecomposableSpec) -> ChoiMap:
    """Choi matrix of sum_i phi_{V_i} + sum_j phi^{W_j}."""
    m, n = spec.shape

    def action(E):
        acc = np.zeros((n, n), dtype=complex)
        for V in spec.Vs:
            acc += V.conj().T @ E @ V
        for W in spec.Ws:
            acc += W.conj().T @ E.T @ W
        return acc

    return choi_of(action, m, n)


def product_pairing(spec: DecomposableSpec, xi, eta) -> float:
    """sum_i |<xi|V_i|eta_bar>|^2 + sum_j |<xi_bar|W_j|eta_bar>|^2 — the
    pairing of the decomposable map with the product state on (xi, eta)."""
    xi = np.asarray(xi, dtype=complex).ravel()
    eta = np.asarray(eta, dtype=complex).ravel()
    total = 0.0
    for V in spec.Vs:
        total += abs(xi.conj() @ V @ eta.conj()) ** 2
    for W in spec.Ws:
        total += abs(xi @ W @ eta.conj()) ** 2
    return float(total)


def boundary_witness_search(
    spec: DecomposableSpec,
    restarts: int = 1000,
    seed: int = 0,
    residual_tol: float = 1e-12,
):
    """Look for unit xi, eta with <xi|V_i|eta_bar> = 0 and
    <xi_bar|W_j|eta_bar> = 0 for every generator: a numerical certificate that
    the map sits on the boundary of the positive-map cone.

    Multi-start alternating minimization: for fixed eta the objective is a
    hermitian quadratic form in xi (take the bottom eigenvector), and
    symmetrically for eta.  Returns (xi, eta, residual) or None; no result is
    inconclusive.
    """
    m, n = spec.shape
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        xi = rng.normal(size=m) + 1j * rng.normal(size=m)
        eta = rng.normal(size=n) + 1j * rng.normal(size=n)
        xi /= np.linalg.norm(xi)
        eta /= np.linalg.norm(eta)
        prev = np.inf
        for _ in range(200):
            M = np.zeros((m, m), dtype=complex)
            for V in spec.Vs:
                a = V @ eta.conj()
                M += np.outer(a, a.conj())
            for W in spec.Ws:
                c = (W @ eta.conj()).conj()
                M += np.outer(c, c.conj())
            w, U = np.linalg.eigh((M + M.conj().T) / 2)
            xi = U[:, 0]
            N = np.zeros((n, n), dtype=complex)
            for V in spec.Vs:
                a = V.conj().T @ xi
                N += np.outer(a, a.conj())
            for W in spec.Ws:
                c = W.conj().T @ xi.conj()
                N += np.outer(c, c.conj())
            w, U = np.linalg.eigh((N + N.conj().T) / 2)
            eta = U[:, 0].conj()
            val = float(w[0].real)
            if prev - val < 1e-16:
                break
            prev = val
        residual = product_pairing(spec, xi, eta)
        if best is None or residual < best[2]:
            best = (xi, eta, residual)
        if residual <= residual_tol:
            return best
    if best is not None and best[2] <= residual_tol:
        return best
    return None


def trace_map_decomposition_2n(mu: int) -> DecomposableSpec:
    """Generators on the 2 (x) 2mu system whose decomposable sum is exactly
    the trace map X -> Tr(X) I: identity blocks for the V's and rotated
    blocks [[0, -1], [1, 0]] for the W's."""
    if mu < 1:
        raise ValueError("mu must be a positive integer")
    J = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
    Vs, Ws = [], []
    for i in range(mu):
        V = np.zeros((2, 2 * mu), dtype=complex)
        V[:, 2 * i:2 * i + 2] = np.eye(2)
        W = np.zeros((2, 2 * mu), dtype=complex)
        W[:, 2 * i:2 * i + 2] = J
        Vs.append(V)
        Ws.append(W)
    return DecomposableSpec(tuple(Vs), tuple(Ws))


def trace_map_decomposition_33() -> DecomposableSpec:
    """Identity plus the three antisymmetric rank-two matrices on M_3; the
    decomposable sum is exactly the trace map, with generator counts (1, 3)."""
    def A(i, j):
        M = np.zeros((3, 3), dtype=complex)
        M[i, j] = 1.0
        M[j, i] = -1.0
        return M

    return DecomposableSpec((np.eye(3, dtype=complex),), (A(0, 1), A(1, 2), A(2, 0)))


def block_positivity_sample(phi: ChoiMap, samples: int = 10000, seed: int = 0) -> float:
    """Minimum of <eta| phi(|xi><xi|) |eta> over sampled unit product vectors,
    refined by alternating bottom-eigenvector descent from the best sample.
    Deterministic per seed; a negative value certifies non-positivity."""
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    m, n = phi.m, phi.n
    Cr = phi.choi.data.reshape(m, n, m, n)

    def value(xi, eta):
        s = np.einsum("a,iajb,b->ij", eta.conj(), Cr, eta)
        return float((xi.conj() @ s @ xi).real)

    best_val = np.inf
    best = None
    for _ in range(samples):
        xi = rng.normal(size=m) + 1j * rng.normal(size=m)
        eta = rng.normal(size=n) + 1j * rng.normal(size=n)
        xi /= np.linalg.norm(xi)
        eta /= np.linalg.norm(eta)
        v = value(xi, eta)
        if v < best_val:
            best_val = v
            best = (xi, eta)
    xi, eta = best
    for _ in range(100):
        s = np.einsum("a,iajb,b->ij", eta.conj(), Cr, eta)
        w, U = np.linalg.eigh((s + s.conj().T) / 2)
        xi = U[:, 0]
        img = apply_map(phi, np.outer(xi, xi.conj()))
        w, U = np.linalg.eigh((img + img.conj().T) / 2)
        eta = U[:, 0]
        v = float(w[0].real)
        if best_val - v < 1e-15:
            best_val = min(best_val, v)
            break
        best_val = v
    return best_val
