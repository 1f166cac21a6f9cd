"""Example systems used throughout the test-suite and the shipped specs."""
from typing import Sequence, Tuple

import numpy as np

from .polynomial import from_roots
from .state_space import StateSpace
from .transfer_function import TransferFunction, tf_from_statespace


def nyquist_example() -> TransferFunction:
    """10/((s²+2s+2)(s+3)): poles -1±j and -3."""
    return TransferFunction.from_descending([10.0], np.polymul([1.0, 2.0, 2.0], [1.0, 3.0]))


def three_pole_system(M: float, betas: Sequence[float]) -> TransferFunction:
    """M/((s+β₁)(s+β₂)(s+β₃)) with real poles -βᵢ."""
    if len(betas) != 3:
        raise ValueError("three_pole_system takes exactly three β values")
    return TransferFunction([float(M)], from_roots([-float(b) for b in betas]))


def three_pole_modal_realization(M: float, betas: Sequence[float]) -> StateSpace:
    """Diagonal realization A = -diag(β), B = 1, Cᵢ = residue of G at -βᵢ."""
    b = np.asarray(betas, dtype=float)
    if len(set(b.tolist())) != 3:
        raise ValueError("modal realization needs distinct β values")
    residues = [M / np.prod([b[j] - b[i] for j in range(3) if j != i]) for i in range(3)]
    return StateSpace(-np.diag(b), np.ones((3, 1)), np.array([residues]), np.zeros((1, 1)))


def kalman_counterexample() -> StateSpace:
    """Fourth-order loop that is stable for small static gains but oscillates with a saturating φ."""
    A = np.array(
        [
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, -1.0],
        ]
    )
    B = np.array([[10.0], [10.1], [0.0], [-1.0]])
    C = np.array([[1.0, 0.0, -10.1, -0.1]])
    return StateSpace(A, B, C, np.zeros((1, 1)))


def kalman_transfer_function() -> TransferFunction:
    return tf_from_statespace(kalman_counterexample())


def chua_linear_part(alpha: float = 8.8, beta: float = 15.0) -> StateSpace:
    """Chua circuit with the diode current as input on ẋ₁ and x₁ as output."""
    A = np.array(
        [
            [-alpha, alpha, 0.0],
            [1.0, -1.0, 1.0],
            [0.0, -beta, 0.0],
        ]
    )
    B = np.array([[-alpha], [0.0], [0.0]])
    C = np.array([[1.0, 0.0, 0.0]])
    return StateSpace(A, B, C, np.zeros((1, 1)))


def lag_controller_plant() -> Tuple[TransferFunction, TransferFunction]:
    """Plant 3(s+1)/((s²+4s+8)(s+3)) and first-order lag 0.4/(s+0.2)."""
    plant = TransferFunction.from_descending([3.0, 3.0], np.polymul([1.0, 4.0, 8.0], [1.0, 3.0]))
    lag = TransferFunction.from_descending([0.4], [1.0, 0.2])
    return plant, lag


def controller_loop(gain: float) -> TransferFunction:
    """Loop -K·G·C seen by the nonlinearity in the controller design example."""
    plant, lag = lag_controller_plant()
    return -(plant * lag) * float(gain)
