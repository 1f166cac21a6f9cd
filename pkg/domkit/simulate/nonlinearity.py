from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class Nonlinearity:
    """Static memoryless nonlinearity φ with its slope and declared slope sector [K₁, K₂].

    ``value`` and ``derivative`` act elementwise on numpy arrays.
    """

    value: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    sector: Tuple[float, float]
    name: str = "custom"
    bound: float = np.inf

    def __call__(self, y):
        return self.value(y)

    def validate_sector(self, y_range: Tuple[float, float] = (-10.0, 10.0), samples: int = 2001, tol: float = 1e-9):
        """Whether the sampled slope stays within the declared sector over ``y_range``."""
        y = np.linspace(y_range[0], y_range[1], samples)
        slope = self.derivative(y)
        k1, k2 = self.sector
        return bool(np.all(slope >= k1 - tol) and np.all(slope <= k2 + tol))

    def to_dict(self) -> dict:
        return {"name": self.name, "sector": list(self.sector)}


def zero() -> Nonlinearity:
    return Nonlinearity(np.zeros_like, np.zeros_like, (0.0, 0.0), "zero", 0.0)


def linear(k: float) -> Nonlinearity:
    return Nonlinearity(lambda y: k * y, lambda y: np.full_like(y, k, dtype=float), (k, k), f"linear({k:g})")


def tanh_scaled(a: float, k: float) -> Nonlinearity:
    """a·tanh(k·y), slope in (0, a·k] for a, k > 0."""
    return Nonlinearity(
        lambda y: a * np.tanh(k * y),
        lambda y: a * k / np.cosh(k * y) ** 2,
        (min(0.0, a * k), max(0.0, a * k)),
        f"tanh_scaled(a={a:g}, k={k:g})",
        abs(a),
    )


def tanh_plus_linear(gain: float = 1.0, eps: float = 0.01) -> Nonlinearity:
    """tanh(gain·y) + eps·y, slope in [eps, eps + gain] for gain > 0."""
    return Nonlinearity(
        lambda y: np.tanh(gain * y) + eps * y,
        lambda y: gain / np.cosh(gain * y) ** 2 + eps,
        (eps + min(0.0, gain), eps + max(0.0, gain)),
        f"tanh_plus_linear(gain={gain:g}, eps={eps:g})",
        np.inf if eps else 1.0,
    )


def from_table(ys: Sequence[float], phis: Sequence[float]) -> Nonlinearity:
    """Piecewise-linear φ through the points (yᵢ, φᵢ), extended with the end slopes."""
    ys = np.asarray(ys, dtype=float)
    phis = np.asarray(phis, dtype=float)
    if ys.ndim != 1 or ys.shape != phis.shape or len(ys) < 2:
        raise ValueError("table needs matching 1-D arrays with at least two points")
    if np.any(np.diff(ys) <= 0):
        raise ValueError("table abscissae must be strictly increasing")
    slopes = np.diff(phis) / np.diff(ys)

    def value(y):
        y = np.asarray(y, dtype=float)
        out = np.interp(y, ys, phis)
        out = np.where(y < ys[0], phis[0] + slopes[0] * (y - ys[0]), out)
        return np.where(y > ys[-1], phis[-1] + slopes[-1] * (y - ys[-1]), out)

    def derivative(y):
        idx = np.clip(np.searchsorted(ys, np.asarray(y, dtype=float), side="right") - 1, 0, len(slopes) - 1)
        return slopes[idx]

    bounded = slopes[0] == 0 and slopes[-1] == 0
    return Nonlinearity(
        value,
        derivative,
        (float(slopes.min()), float(slopes.max())),
        "custom_table",
        float(np.abs(phis).max()) if bounded else np.inf,
    )
