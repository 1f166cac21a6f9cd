from dataclasses import dataclass
from typing import Optional

import numpy as np

from domkit.lti import TransferFunction, shift

DEFAULT_POINTS = 2000
DEFAULT_OMEGA_MIN = 1e-3
DEFAULT_OMEGA_MAX = 1e4
DENSIFY_FACTOR = 10


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Frequencies sampling the boundary {-λ + jω} of the shifted region.

    Args:
        omegas: strictly increasing frequencies in rad/s.
        symmetric: mirror the non-negative frequencies to -ω when building a closed contour.
            A non-symmetric grid must sample the negative frequencies itself.
    """

    omegas: np.ndarray
    symmetric: bool = True

    def __post_init__(self):
        omegas = np.asarray(self.omegas, dtype=float).ravel()
        if omegas.size == 0:
            raise ValueError("frequency grid is empty")
        if not np.all(np.isfinite(omegas)):
            raise ValueError("frequency grid has non-finite entries")
        if np.any(np.diff(omegas) <= 0):
            raise ValueError("frequency grid must be strictly increasing")
        if self.symmetric and omegas[0] < 0:
            raise ValueError("a symmetric grid holds non-negative frequencies only")
        object.__setattr__(self, "omegas", omegas)

    def __len__(self):
        return len(self.omegas)

    def full(self) -> np.ndarray:
        """Frequencies of the whole imaginary axis, ascending."""
        if not self.symmetric:
            return self.omegas
        positive = self.omegas[self.omegas > 0]
        mirrored = -positive[::-1]
        return np.concatenate([mirrored, self.omegas]) if self.omegas[0] == 0 else np.concatenate([mirrored, positive])

    def nonnegative(self) -> np.ndarray:
        omegas = self.omegas if self.symmetric else np.abs(self.omegas)
        return np.unique(omegas)

    def describe(self) -> dict:
        return {
            "points": len(self.omegas),
            "omega_min": float(self.omegas[self.omegas > 0].min(initial=np.inf)),
            "omega_max": float(self.omegas.max()),
            "symmetric": self.symmetric,
        }


def log_grid(
    points: int = DEFAULT_POINTS,
    omega_min: float = DEFAULT_OMEGA_MIN,
    omega_max: float = DEFAULT_OMEGA_MAX,
    include_zero: bool = True,
) -> FrequencyGrid:
    if points < 2:
        raise ValueError("a frequency grid needs at least two points")
    if not 0 < omega_min < omega_max:
        raise ValueError(f"need 0 < omega_min < omega_max, got {omega_min}, {omega_max}")
    omegas = np.logspace(np.log10(omega_min), np.log10(omega_max), points)
    if include_zero:
        omegas = np.concatenate([[0.0], omegas])
    return FrequencyGrid(omegas)


def default_grid(
    G: Optional[TransferFunction] = None,
    lam: float = 0.0,
    points: int = DEFAULT_POINTS,
    omega_min: float = DEFAULT_OMEGA_MIN,
    omega_max: float = DEFAULT_OMEGA_MAX,
) -> FrequencyGrid:
    """Log grid plus ω = 0, refined ×10 within a decade of each shifted pole/zero frequency."""
    base = log_grid(points, omega_min, omega_max)
    if G is None:
        return base
    decades = np.log10(omega_max / omega_min)
    per_decade = DENSIFY_FACTOR * points / decades
    H = shift(G, lam)
    roots = np.concatenate([H.poles(), H.zeros()])
    extra = [base.omegas]
    for center in np.unique(np.abs(roots.imag)):
        if center <= omega_min or center >= omega_max:
            continue
        lo, hi = max(omega_min, center / 10), min(omega_max, center * 10)
        count = int(np.ceil(per_decade * np.log10(hi / lo)))
        extra.append(np.logspace(np.log10(lo), np.log10(hi), count))
    return FrequencyGrid(np.unique(np.concatenate(extra)))
