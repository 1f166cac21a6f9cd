from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.signal import correlate

from domkit.utils.config import DEFAULT_TOLERANCES, Tolerances

from .lure import Trajectory

MIN_TAIL_SAMPLES = 1000
MIN_PERIOD_SAMPLES = 10


@dataclass(frozen=True, eq=False)
class AttractorLabel:
    """Asymptotic behaviour read off the tail of a trajectory.

    ``kind`` is one of ``fixed_point``, ``periodic``, ``other`` or ``diverged``. The witness is
    the final state for a fixed point; periodic tails carry the recurrence ``period``.
    """

    kind: str
    witness: Optional[np.ndarray] = None
    period: Optional[float] = None
    residual: Optional[float] = None
    diameter: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "witness": None if self.witness is None else np.asarray(self.witness).tolist(),
            "period": self.period,
            "residual": self.residual,
            "diameter": self.diameter,
        }


def recurrence_residual(states: np.ndarray, shift: float) -> float:
    """max‖x(t) - x(t - τ)‖ over the last τ of the samples, τ = ``shift`` samples (fractional)."""
    n = len(states)
    window = int(np.ceil(shift)) + 1
    idx = np.arange(n - window, n)
    back = idx - shift
    lo = np.floor(back).astype(int)
    frac = (back - lo)[:, None]
    delayed = (1 - frac) * states[lo] + frac * states[np.minimum(lo + 1, n - 1)]
    return float(np.linalg.norm(states[idx] - delayed, axis=1).max())


def _autocorrelation_lag(signal: np.ndarray) -> Optional[int]:
    signal = signal - signal.mean()
    ac = correlate(signal, signal, mode="full", method="fft")[len(signal) - 1 :]
    if ac[0] <= 0:
        return None
    negative = np.flatnonzero(ac[: len(signal) // 2] < 0)
    if len(negative) == 0:
        return None
    first = int(negative[0])
    return first + int(np.argmax(ac[first : len(signal) // 2]))


def _refine_period(states: np.ndarray, lag: int):
    candidates = np.linspace(0.9 * lag, 1.1 * lag, 201)
    candidates = candidates[(candidates > MIN_PERIOD_SAMPLES) & (candidates < len(states) / 2)]
    if len(candidates) == 0:
        return None, np.inf
    residuals = [recurrence_residual(states, c) for c in candidates]
    best = int(np.argmin(residuals))
    step = candidates[1] - candidates[0] if len(candidates) > 1 else 1.0
    result = minimize_scalar(
        lambda c: recurrence_residual(states, c),
        bounds=(max(candidates[best] - step, MIN_PERIOD_SAMPLES), candidates[best] + step),
        method="bounded",
        options={"xatol": 1e-4},
    )
    if result.fun < residuals[best]:
        return float(result.x), float(result.fun)
    return float(candidates[best]), float(residuals[best])


def classify(
    traj: Trajectory,
    transient_fraction: Optional[float] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> AttractorLabel:
    """Label the post-transient behaviour as a fixed point, a periodic orbit or something else.

    Raises:
        ValueError: fewer than 1000 samples remain after the transient.
    """
    if traj.diverged:
        return AttractorLabel("diverged")
    fraction = tolerances.transient_fraction if transient_fraction is None else transient_fraction
    tail = traj.states[int(np.floor(len(traj) * fraction)) :]
    if len(tail) < MIN_TAIL_SAMPLES:
        raise ValueError(f"need at least {MIN_TAIL_SAMPLES} post-transient samples, got {len(tail)}")

    mean = tail.mean(axis=0)
    diameter = float(np.linalg.norm(np.ptp(tail, axis=0)))
    if diameter < tolerances.fixed_point_rel * (1 + np.linalg.norm(mean)):
        return AttractorLabel("fixed_point", tail[-1].copy(), diameter=diameter)

    coordinate = int(np.argmax(np.ptp(tail, axis=0)))
    lag = _autocorrelation_lag(tail[:, coordinate])
    if lag is None or lag <= MIN_PERIOD_SAMPLES:
        return AttractorLabel("other", diameter=diameter)
    shift, residual = _refine_period(tail, lag)
    if shift is not None and residual < tolerances.recurrence_rel * diameter:
        return AttractorLabel("periodic", period=shift * traj.dt, residual=residual, diameter=diameter)
    return AttractorLabel("other", residual=residual, diameter=diameter)


def classify_batch(trajectories: List[Trajectory], **kwargs) -> List[AttractorLabel]:
    return [classify(traj, **kwargs) for traj in trajectories]
