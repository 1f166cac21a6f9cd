from dataclasses import dataclass

import numpy as np

from domkit.numerics import as_matrix


@dataclass(frozen=True, eq=False)
class Supply:
    """Quadratic supply s(y, u) = [y; u]ᵀ [[Q, L], [Lᵀ, R]] [y; u].

    Scalars are accepted for SISO use and stored as 1×1 matrices.
    """

    Q: np.ndarray
    L: np.ndarray
    R: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        Q, L, R = as_matrix(self.Q, "Q"), as_matrix(self.L, "L"), as_matrix(self.R, "R")
        if Q.shape != (L.shape[0], L.shape[0]) or R.shape != (L.shape[1], L.shape[1]):
            raise ValueError(f"supply blocks do not fit: Q {Q.shape}, L {L.shape}, R {R.shape}")
        for label, M in (("Q", Q), ("R", R)):
            if np.max(np.abs(M - M.T), initial=0.0) > 1e-12:
                raise ValueError(f"supply block {label} is not symmetric")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "R", R)

    @property
    def is_scalar(self) -> bool:
        return self.L.shape == (1, 1)

    def scalars(self):
        """(Q, L, R) as floats for SISO frequency tests."""
        if not self.is_scalar:
            raise ValueError("frequency-domain tests take a scalar supply")
        return float(self.Q[0, 0]), float(self.L[0, 0]), float(self.R[0, 0])

    def scale(self) -> float:
        return float(np.abs(self.Q).sum() + np.abs(self.L).sum() + np.abs(self.R).sum())

    def is_zero(self) -> bool:
        return not (np.any(self.Q) or np.any(self.L) or np.any(self.R))

    def to_dict(self) -> dict:
        return {"name": self.name, "Q": self.Q.tolist(), "L": self.L.tolist(), "R": self.R.tolist()}


def zero_supply(m: int = 1) -> Supply:
    return Supply(np.zeros((m, m)), np.zeros((m, m)), np.zeros((m, m)), "zero")


def passive_supply(m: int = 1) -> Supply:
    return Supply(np.zeros((m, m)), np.eye(m), np.zeros((m, m)), "passive")


def strictly_output_passive_supply(eps: float, m: int = 1) -> Supply:
    return Supply(-eps * np.eye(m), np.eye(m), np.zeros((m, m)), "strictly_output_passive")


def strictly_input_passive_supply(delta: float, m: int = 1) -> Supply:
    return Supply(np.zeros((m, m)), np.eye(m), -delta * np.eye(m), "strictly_input_passive")


def sector_supply(k1: float, k2: float) -> Supply:
    """Supply matched to slopes in [K₁, K₂] under u = -φ(y): Q = 2K₁K₂, L = K₁ + K₂, R = 2.

    Its frequency form is twice the circle inequality K₁K₂Y² + (K₁X + 1)(K₂X + 1).
    """
    if k1 >= k2:
        raise ValueError(f"sector needs K1 < K2, got [{k1}, {k2}]")
    return Supply(2.0 * k1 * k2, k1 + k2, 2.0, "sector")


def transformed_sector_supply(k1: float, k2: float) -> Supply:
    """Sector supply after the loop transformation φ̃ = φ - K₁y, for use on G/(1 + K₁G)."""
    if k1 >= k2:
        raise ValueError(f"sector needs K1 < K2, got [{k1}, {k2}]")
    return Supply(0.0, k2 - k1, 2.0, "transformed_sector")


def supply_admits_slope(supply: Supply, slope: float) -> bool:
    """Whether a nonlinearity of the given slope satisfies [1; -s]ᵀ [[Q, L], [L, R]] [1; -s] ≤ 0."""
    Q, L, R = supply.scalars()
    return Q - 2.0 * L * slope + R * slope**2 <= 1e-12 * (1 + supply.scale()) * (1 + slope**2)
