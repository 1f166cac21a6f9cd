from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
import scipy.linalg
from scipy.optimize import brentq

from domkit.lti import StateSpace
from domkit.numerics import eigenvalues
from domkit.utils.errors import BoundaryError, NumericsError
from domkit.utils.logging import init_logger

from .nonlinearity import Nonlinearity

logger = init_logger(__name__)

DIVERGENCE_NORM = 1e12


@dataclass(frozen=True, eq=False)
class LureLoop:
    """Linear system in feedback with a static nonlinearity: u = feedback_sign·φ(y).

    Args:
        linear: SISO state-space model with D = 0.
        phi: the nonlinearity.
        feedback_sign: -1 for negative feedback u = -φ(y), +1 for positive feedback.
    """

    linear: StateSpace
    phi: Nonlinearity
    feedback_sign: int = -1

    def __post_init__(self):
        if not self.linear.is_siso:
            raise ValueError("Lur'e loops are SISO")
        if self.feedback_sign not in (-1, 1):
            raise ValueError(f"feedback_sign must be -1 or +1, got {self.feedback_sign}")

    @property
    def order(self) -> int:
        return self.linear.order

    def as_negative_feedback(self) -> "LureLoop":
        """Equivalent loop with negative feedback; positive feedback moves into -B."""
        if self.feedback_sign == -1:
            return self
        return LureLoop(self.linear.negated_input(), self.phi, -1)

    def output(self, X: np.ndarray) -> np.ndarray:
        return X @ self.linear.C[0]

    def input(self, X: np.ndarray) -> np.ndarray:
        return self.feedback_sign * self.phi(self.output(X))

    def vector_field(self, X: np.ndarray) -> np.ndarray:
        # Rows of X are states of independent trajectories.
        return X @ self.linear.A.T + np.outer(self.input(X), self.linear.B[:, 0])


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled solution; ``states`` has shape (len(times), n).

    A diverged run is truncated at the last finite sample and flagged.
    """

    times: np.ndarray
    states: np.ndarray
    dt: float
    outputs: np.ndarray
    inputs: np.ndarray
    diverged: bool = False

    def __len__(self):
        return len(self.times)


def _check_loop(loop: LureLoop, dt: float, T: float):
    if dt <= 0:
        raise ValueError(f"step must be positive, got {dt}")
    if T < dt:
        raise ValueError(f"horizon {T} shorter than the step {dt}")
    if np.any(loop.linear.D):
        raise ValueError("simulation requires D = 0 (the loop would be implicit)")


def simulate_batch(loop: LureLoop, X0, dt: float, T: float) -> List[Trajectory]:
    """Classical fixed-step RK4 from each row of ``X0``, advanced in lockstep."""
    _check_loop(loop, dt, T)
    X = np.atleast_2d(np.asarray(X0, dtype=float)).copy()
    if X.shape[1] != loop.order:
        raise ValueError(f"initial states have dimension {X.shape[1]}, expected {loop.order}")
    steps = int(round(T / dt))
    states = np.empty((steps + 1, X.shape[0], X.shape[1]))
    states[0] = X
    alive = np.full(X.shape[0], steps + 1)
    f = loop.vector_field
    for i in range(1, steps + 1):
        k1 = f(X)
        k2 = f(X + 0.5 * dt * k1)
        k3 = f(X + 0.5 * dt * k2)
        k4 = f(X + dt * k3)
        X = X + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        bad = ~np.all(np.isfinite(X), axis=1) | (np.abs(X).max(axis=1) > DIVERGENCE_NORM)
        newly = bad & (alive > i)
        alive[newly] = i
        X[bad] = 0.0
        states[i] = X
        if np.all(alive <= i):
            break

    times = dt * np.arange(steps + 1)
    trajectories = []
    for b in range(X.shape[0]):
        end = int(alive[b])
        diverged = end <= steps
        if diverged:
            logger.warning(f"trajectory {b} diverged at t = {times[end]:.4g}")
        xs = states[:end, b, :]
        y = loop.output(xs)
        trajectories.append(Trajectory(times[:end], xs, dt, y, loop.feedback_sign * loop.phi(y), diverged))
    return trajectories


def simulate(loop: LureLoop, x0, dt: float, T: float) -> Trajectory:
    return simulate_batch(loop, np.atleast_2d(np.asarray(x0, dtype=float)), dt, T)[0]


@dataclass(frozen=True)
class Equilibrium:
    u: float
    y: float
    x: np.ndarray


def equilibria(
    loop: LureLoop, search_range: Tuple[float, float] = (-100.0, 100.0), samples: int = 4001
) -> List[Equilibrium]:
    """Equilibria from the scalar equation u - s·φ(G(0)u) = 0, s the feedback sign.

    Sign changes on a uniform scan of ``search_range`` are refined with Brent's method.

    Raises:
        BoundaryError: if G has a pole at s = 0 (A singular).
    """
    A, B, C = loop.linear.A, loop.linear.B, loop.linear.C
    if np.any(np.abs(eigenvalues(A)) <= 1e-12 * (1 + np.linalg.norm(A, 2))):
        raise BoundaryError("pole at origin", "G(0) is not finite")
    x_per_u = -np.linalg.solve(A, B[:, 0])
    g0 = float(C[0] @ x_per_u + loop.linear.D[0, 0])

    def h(u):
        return u - loop.feedback_sign * loop.phi(g0 * u)

    us = np.linspace(search_range[0], search_range[1], samples)
    values = h(us)
    roots = []
    for i in range(len(us)):
        if values[i] == 0:
            roots.append(float(us[i]))
        elif i + 1 < len(us) and values[i] * values[i + 1] < 0:
            roots.append(float(brentq(h, us[i], us[i + 1], xtol=1e-12, rtol=4 * np.finfo(float).eps)))
    roots = sorted(roots)
    unique = [u for j, u in enumerate(roots) if j == 0 or u - roots[j - 1] > 1e-8]
    return [Equilibrium(u, g0 * u, x_per_u * u) for u in unique]


def a_priori_state_bound(linear: StateSpace, x0, phi_bound: float, horizon: Optional[float] = None) -> float:
    """sup‖e^{At}x0‖ + sup|φ|·∫‖e^{At}B‖dt, an upper bound on ‖x(t)‖ for Hurwitz A and bounded φ."""
    eigs = eigenvalues(linear.A)
    decay = -eigs.real.max()
    if decay <= 0:
        raise NumericsError("a priori bound needs a Hurwitz A")
    if not np.isfinite(phi_bound):
        raise ValueError("a priori bound needs a bounded nonlinearity")
    horizon = horizon if horizon is not None else 40.0 / decay
    step = min(0.01, 0.01 / max(1.0, np.abs(eigs).max()))
    times = np.arange(0.0, horizon + step, step)
    Phi = scipy.linalg.expm(linear.A * step)
    x = np.asarray(x0, dtype=float).copy()
    b = linear.B[:, 0].copy()
    free, forced = [], []
    for _ in times:
        free.append(np.linalg.norm(x))
        forced.append(np.linalg.norm(b))
        x, b = Phi @ x, Phi @ b
    forced = np.asarray(forced)
    integral = step * (forced.sum() - 0.5 * (forced[0] + forced[-1]))
    # Sampling slack for the supremum and the trapezoid rule.
    return 1.05 * (max(free) + phi_bound * integral * 1.01)


def trajectory_frame(traj: Trajectory) -> pd.DataFrame:
    data = {"t": traj.times}
    for j in range(traj.states.shape[1]):
        data[f"x{j + 1}"] = traj.states[:, j]
    data["y"] = traj.outputs
    data["u"] = traj.inputs
    return pd.DataFrame(data)
