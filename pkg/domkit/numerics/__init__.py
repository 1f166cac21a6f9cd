from .linalg import Inertia, as_matrix, eigenvalues, lyapunov_operator, solve_lyapunov, symmetric_inertia

__all__ = ["Inertia", "as_matrix", "eigenvalues", "lyapunov_operator", "solve_lyapunov", "symmetric_inertia"]
