from dataclasses import dataclass

import numpy as np

from domkit.numerics import as_matrix, eigenvalues


@dataclass(frozen=True, eq=False)
class StateSpace:
    """Linear system ẋ = Ax + Bu, y = Cx + Du.

    Args:
        A: n×n state matrix.
        B: n×m input matrix (a flat vector is read as a single column).
        C: p×n output matrix (a flat vector is read as a single row).
        D: p×m feedthrough, defaults to zero.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray = None

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        B = np.asarray(self.B, dtype=float)
        B = B.reshape(-1, 1) if B.ndim == 1 else as_matrix(B, "B")
        C = as_matrix(self.C, "C")
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError(f"A must be square, got shape {A.shape}")
        if B.shape[0] != n:
            raise ValueError(f"B has {B.shape[0]} rows, expected {n}")
        if C.shape[1] != n:
            raise ValueError(f"C has {C.shape[1]} columns, expected {n}")
        D = np.zeros((C.shape[0], B.shape[1])) if self.D is None else as_matrix(self.D, "D")
        if D.shape != (C.shape[0], B.shape[1]):
            raise ValueError(f"D has shape {D.shape}, expected {(C.shape[0], B.shape[1])}")
        if not np.all(np.isfinite(B)):
            raise ValueError("B has non-finite entries")
        for name, value in (("A", A), ("B", B), ("C", C), ("D", D)):
            object.__setattr__(self, name, value)

    @property
    def order(self) -> int:
        return self.A.shape[0]

    @property
    def inputs(self) -> int:
        return self.B.shape[1]

    @property
    def outputs(self) -> int:
        return self.C.shape[0]

    @property
    def is_siso(self) -> bool:
        return self.inputs == 1 and self.outputs == 1

    def poles(self) -> np.ndarray:
        return eigenvalues(self.A)

    def negated_input(self) -> "StateSpace":
        """Same system driven by -u, i.e. the constant multiplier -1 folded into B and D."""
        return StateSpace(self.A, -self.B, self.C, -self.D)

    def closed_loop(self, k: float) -> np.ndarray:
        """State matrix of the loop closed by u = -k·y (requires D = 0)."""
        if np.any(self.D):
            raise ValueError("static output feedback needs D = 0")
        return self.A - k * self.B @ self.C
