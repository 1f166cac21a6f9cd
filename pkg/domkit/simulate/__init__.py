from .attractor import AttractorLabel, classify, classify_batch, recurrence_residual
from .lure import (
    Equilibrium,
    LureLoop,
    Trajectory,
    a_priori_state_bound,
    equilibria,
    simulate,
    simulate_batch,
    trajectory_frame,
)
from .nonlinearity import Nonlinearity, from_table, linear, tanh_plus_linear, tanh_scaled, zero

__all__ = [
    "AttractorLabel",
    "classify",
    "classify_batch",
    "recurrence_residual",
    "Equilibrium",
    "LureLoop",
    "Trajectory",
    "a_priori_state_bound",
    "equilibria",
    "simulate",
    "simulate_batch",
    "trajectory_frame",
    "Nonlinearity",
    "from_table",
    "linear",
    "tanh_plus_linear",
    "tanh_scaled",
    "zero",
]
