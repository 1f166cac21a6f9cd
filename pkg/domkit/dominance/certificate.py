from dataclasses import dataclass
from typing import Optional

import numpy as np

from domkit.lti import StateSpace
from domkit.numerics import as_matrix, eigenvalues, solve_lyapunov, symmetric_inertia
from domkit.utils.config import DEFAULT_TOLERANCES, Tolerances
from domkit.utils.errors import BoundaryError
from domkit.utils.logging import init_logger

from .supply import Supply

logger = init_logger(__name__)


@dataclass(frozen=True, eq=False)
class DominanceCertificate:
    """Storage matrix P with p negative and n - p positive eigenvalues.

    Witnesses AᵀP + PA + 2λP ≤ -εI, strictly when ``eps > 0``.
    """

    P: np.ndarray
    eps: float
    lam: float
    p: int

    def __post_init__(self):
        object.__setattr__(self, "P", as_matrix(self.P, "P"))
        if self.eps < 0 or self.lam < 0:
            raise ValueError("certificate needs eps >= 0 and lambda >= 0")

    @property
    def strict(self) -> bool:
        return self.eps > 0

    def rescaled(self, c: float) -> "DominanceCertificate":
        return DominanceCertificate(c * self.P, c * self.eps, self.lam, self.p)

    def with_rate(self, lam: float) -> "DominanceCertificate":
        return DominanceCertificate(self.P, self.eps, lam, self.p)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reason: Optional[str] = None
    max_eigenvalue: float = float("nan")

    def __bool__(self):
        return self.ok


def _default_lmi_tol(rel: float, *blocks) -> float:
    return rel * max(1.0, max(np.linalg.norm(b, 2) for b in blocks))


def _check_inertia(P: np.ndarray, p: int, zero_rel: float) -> Optional[str]:
    scale = max(1.0, np.linalg.norm(P, 2))
    if np.max(np.abs(P - P.T), initial=0.0) > 1e-12 * scale:
        return "asymmetric"
    inertia = symmetric_inertia(P, zero_rel * scale)
    if inertia.as_tuple() != (P.shape[0] - p, 0, p):
        return "inertia"
    return None


def build_dominance_certificate(
    A, lam: float, tol: Optional[float] = None, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> DominanceCertificate:
    """Certificate from the Lyapunov equation of the shifted matrix A + λI.

    Raises:
        BoundaryError: if A + λI has an eigenvalue on the imaginary axis.
    """
    A = as_matrix(A, "A")
    if lam < 0:
        raise ValueError(f"rate must be non-negative, got {lam}")
    if tol is None:
        tol = tolerances.boundary_tol(lam)
    shifted = A + lam * np.eye(A.shape[0])
    eigs = eigenvalues(shifted)
    if np.any(np.abs(eigs.real) <= tol):
        raise BoundaryError("boundary pole", f"no strict certificate at rate {lam:g}")
    P = solve_lyapunov(shifted, np.eye(A.shape[0]))
    return DominanceCertificate(P, 1.0, lam, int(np.sum(eigs.real > 0)))


def verify_dominance_certificate(
    A, cert: DominanceCertificate, tol: Optional[float] = None, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> VerificationResult:
    """Check AᵀP + PA + 2λP + εI ≤ tol and the inertia (n - p, 0, p) of P."""
    A = as_matrix(A, "A")
    P = cert.P
    n = A.shape[0]
    if A.shape != (n, n) or P.shape != (n, n) or not 0 <= cert.p <= n:
        return VerificationResult(False, "dimension")
    reason = _check_inertia(P, cert.p, tolerances.zero_eig_rel)
    if reason:
        return VerificationResult(False, reason)
    M = A.T @ P + P @ A + 2 * cert.lam * P + cert.eps * np.eye(n)
    M = 0.5 * (M + M.T)
    if tol is None:
        tol = _default_lmi_tol(tolerances.lmi, A.T @ P, P * max(1.0, cert.lam))
    top = float(np.linalg.eigvalsh(M).max())
    if top > tol:
        return VerificationResult(False, "lmi", top)
    return VerificationResult(True, None, top)


def dissipativity_matrix(sys: StateSpace, supply: Supply, cert: DominanceCertificate) -> np.ndarray:
    """Symmetric block matrix whose negative semidefiniteness is the dissipation inequality."""
    A, B, C, D = sys.A, sys.B, sys.C, sys.D
    Q, L, R, P = supply.Q, supply.L, supply.R, cert.P
    n = A.shape[0]
    top_left = A.T @ P + P @ A - C.T @ Q @ C + 2 * cert.lam * P + cert.eps * np.eye(n)
    top_right = P @ B - C.T @ L - C.T @ Q @ D
    bottom_right = -R - D.T @ L - L.T @ D - D.T @ Q @ D
    M = np.block([[top_left, top_right], [top_right.T, bottom_right]])
    return 0.5 * (M + M.T)


def verify_dissipativity_certificate(
    sys: StateSpace,
    supply: Supply,
    cert: DominanceCertificate,
    tol: Optional[float] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> VerificationResult:
    """Check the block LMI of p-dissipativity with rate λ for the given supply.

    With the zero supply the inequality collapses to plain dominance of A, which is what is
    checked (the full block would additionally force PB = 0).
    """
    if supply.is_zero():
        return verify_dominance_certificate(sys.A, cert, tol, tolerances)
    n = sys.order
    if (
        cert.P.shape != (n, n)
        or supply.Q.shape != (sys.outputs, sys.outputs)
        or supply.R.shape != (sys.inputs, sys.inputs)
        or not 0 <= cert.p <= n
    ):
        return VerificationResult(False, "dimension")
    reason = _check_inertia(cert.P, cert.p, tolerances.zero_eig_rel)
    if reason:
        return VerificationResult(False, reason)
    M = dissipativity_matrix(sys, supply, cert)
    if tol is None:
        blocks = (sys.A.T @ cert.P, cert.P * max(1.0, cert.lam), cert.P @ sys.B, supply.Q, supply.L, supply.R)
        tol = _default_lmi_tol(tolerances.lmi, *blocks)
    top = float(np.linalg.eigvalsh(M).max())
    if top > tol:
        logger.debug(f"dissipation LMI violated, max eigenvalue {top:.3e} > {tol:.3e}")
        return VerificationResult(False, "lmi", top)
    return VerificationResult(True, None, top)
