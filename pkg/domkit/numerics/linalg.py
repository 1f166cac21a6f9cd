"""Dense linear algebra for the small matrices met in dominance analysis."""
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from domkit.utils.config import DEFAULT_TOLERANCES
from domkit.utils.errors import NumericsError, SingularLyapunovError


@dataclass(frozen=True)
class Inertia:
    """Counts of positive, (numerically) zero and negative eigenvalues of a symmetric matrix."""

    n_pos: int
    n_zero: int
    n_neg: int

    @property
    def dim(self) -> int:
        return self.n_pos + self.n_zero + self.n_neg

    def as_tuple(self):
        return (self.n_pos, self.n_zero, self.n_neg)


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    return M


def _as_square(M, name: str = "matrix") -> np.ndarray:
    M = as_matrix(M, name)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    return M


def eigenvalues(M) -> np.ndarray:
    """All eigenvalues of a real square matrix, with multiplicity.

    LAPACK returns complex eigenvalues of real input in exact conjugate pairs.
    """
    M = _as_square(M)
    try:
        return np.linalg.eigvals(M).astype(complex)
    except np.linalg.LinAlgError as e:
        raise NumericsError(f"eigenvalue iteration did not converge: {e}")


def symmetric_inertia(S, tol: Optional[float] = None) -> Inertia:
    S = _as_square(S)
    scale = np.linalg.norm(S, 2) if S.size else 0.0
    if np.max(np.abs(S - S.T), initial=0.0) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    if tol is None:
        tol = DEFAULT_TOLERANCES.zero_eig_rel * max(1.0, scale)
    eigs = np.linalg.eigvalsh(0.5 * (S + S.T))
    n_pos = int(np.sum(eigs > tol))
    n_neg = int(np.sum(eigs < -tol))
    return Inertia(n_pos, len(eigs) - n_pos - n_neg, n_neg)


def solve_lyapunov(A, Q) -> np.ndarray:
    """Solve AᵀP + PA = -Q for symmetric P (Bartels-Stewart through scipy).

    When λᵢ + λⱼ = 0 for some pair of eigenvalues the operator is singular; a consistent
    right-hand side (e.g. decoupled diagonal A) still gets the minimum-norm solution.

    Raises:
        SingularLyapunovError: if the operator is singular and the equation has no solution.
    """
    A = _as_square(A, "A")
    Q = _as_square(Q, "Q")
    if Q.shape != A.shape:
        raise ValueError(f"Q has shape {Q.shape}, expected {A.shape}")
    if np.max(np.abs(Q - Q.T), initial=0.0) > 1e-12 * max(1.0, np.linalg.norm(Q, 2)):
        raise ValueError("Q is not symmetric")

    eigs = eigenvalues(A)
    pair_sums = np.abs(eigs[:, None] + eigs[None, :])
    if pair_sums.min() <= 1e-10 * (1.0 + np.abs(eigs).max()):
        P = _solve_singular_lyapunov(A, Q)
    else:
        # scipy solves aX + Xaᴴ = q
        P = scipy.linalg.solve_continuous_lyapunov(A.T, -Q)
    P = 0.5 * (P + P.T)

    residual = np.linalg.norm(A.T @ P + P @ A + Q, 2)
    bound = 1e-8 * (np.linalg.norm(A, 2) * np.linalg.norm(P, 2) + np.linalg.norm(Q, 2))
    if residual > bound:
        raise NumericsError(f"Lyapunov residual {residual:.3e} exceeds {bound:.3e}")
    return P


def lyapunov_operator(A) -> np.ndarray:
    """Matrix of P -> AᵀP + PA acting on row-major vec(P)."""
    A = _as_square(A, "A")
    eye = np.eye(A.shape[0])
    return np.kron(A.T, eye) + np.kron(eye, A.T)


def _solve_singular_lyapunov(A: np.ndarray, Q: np.ndarray) -> np.ndarray:
    # Minimum-norm solution; a singular operator is accepted only for consistent right-hand sides.
    n = A.shape[0]
    K = lyapunov_operator(A)
    vec, *_ = np.linalg.lstsq(K, -Q.reshape(-1), rcond=None)
    gap = np.linalg.norm(K @ vec + Q.reshape(-1))
    if gap > 1e-8 * (np.linalg.norm(K, 2) * np.linalg.norm(vec) + np.linalg.norm(Q)):
        raise SingularLyapunovError("eigenvalue pairing λi + λj = 0 makes AᵀP + PA = -Q inconsistent")
    return vec.reshape(n, n)
