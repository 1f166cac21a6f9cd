from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from domkit.lti import TransferFunction, pole_zero_split, shift
from domkit.utils.config import DEFAULT_TOLERANCES, Tolerances
from domkit.utils.errors import BoundaryError, GridTooCoarseError, InconclusiveError
from domkit.utils.logging import init_logger

from .grid import FrequencyGrid, default_grid

logger = init_logger(__name__)

ARC_POINTS = 41


@dataclass(frozen=True, eq=False)
class NyquistLocus:
    """Image of the boundary of the shifted region under G, ordered by increasing ω.

    ``closure_point`` is the image of the infinite arc (the feedthrough), through which the
    contour is closed. It is ``None`` for a locus that is already a closed polygon.
    """

    points: np.ndarray
    closure_point: Optional[complex] = None
    omegas: Optional[np.ndarray] = None

    def __post_init__(self):
        points = np.asarray(self.points, dtype=complex).ravel()
        if not np.all(np.isfinite(points)):
            raise ValueError("locus has non-finite points")
        object.__setattr__(self, "points", points)
        if self.omegas is not None:
            object.__setattr__(self, "omegas", np.asarray(self.omegas, dtype=float).ravel())

    def omega_of(self, index: int) -> float:
        if self.omegas is None:
            raise ValueError("locus carries no frequency labels")
        return float(self.omegas[index])

    def contour(self) -> np.ndarray:
        """Vertices of the closed polygon, first vertex repeated at the end."""
        if self.closure_point is None:
            return np.concatenate([self.points, self.points[:1]])
        closure = np.array([self.closure_point], dtype=complex)
        return np.concatenate([closure, self.points, closure])


def _indented_path(omegas: np.ndarray, axis_poles: np.ndarray, radius: float) -> np.ndarray:
    # Semicircles bulge into Re s > 0, leaving each boundary pole outside the enclosed region.
    s = 1j * omegas
    for w0 in np.unique(np.round(axis_poles.imag, 12)):
        s = s[np.abs(s.imag - w0) >= radius]
        theta = np.linspace(-np.pi / 2, np.pi / 2, ARC_POINTS)
        s = np.concatenate([s, 1j * w0 + radius * np.exp(1j * theta)])
    return s[np.argsort(s.imag, kind="stable")]


def nyquist_locus(
    G: TransferFunction,
    lam: float,
    grid: Optional[FrequencyGrid] = None,
    indent_radius: Optional[float] = None,
    tol: Optional[float] = None,
) -> NyquistLocus:
    """Sample G(jω - λ) along the whole imaginary axis.

    Args:
        indent_radius: if set, poles of G(s-λ) on the imaginary axis are bypassed by semicircles
            of this radius instead of raising.

    Raises:
        BoundaryError: on a boundary pole when ``indent_radius`` is not given.
    """
    if not G.is_proper:
        raise ValueError("the Nyquist locus of an improper transfer function is unbounded")
    if tol is None:
        tol = DEFAULT_TOLERANCES.boundary_tol(lam)
    grid = grid if grid is not None else default_grid(G, lam)
    H = shift(G, lam)
    poles = H.poles()
    axis_poles = poles[np.abs(poles.real) <= tol]
    if len(axis_poles) and indent_radius is None:
        raise BoundaryError("boundary pole", f"G(s-{lam:g}) has poles {np.round(axis_poles, 9)} on the imaginary axis")
    if len(axis_poles):
        logger.info(f"indenting around {len(axis_poles)} boundary pole(s) with radius {indent_radius:g}")
        s = _indented_path(grid.full(), axis_poles, indent_radius)
    else:
        s = 1j * grid.full()
    return NyquistLocus(H.evaluate(s), complex(H.feedthrough), s.imag)


def winding_number(
    locus: NyquistLocus,
    point: complex,
    rel_tol: Optional[float] = None,
    integer_tol: float = DEFAULT_TOLERANCES.winding_integer,
) -> int:
    """Counterclockwise turns of the closed locus around ``point``.

    Clockwise encirclements, the count used by the dominance criteria, are the negative.

    Raises:
        InconclusiveError: if ``point`` is within ``rel_tol·max(1, |point|)`` of a locus vertex.
        GridTooCoarseError: if consecutive vertices subtend more than π/2 as seen from ``point``,
            or the accumulated phase is further than ``integer_tol`` turns from an integer.
    """
    if rel_tol is None:
        rel_tol = DEFAULT_TOLERANCES.locus_clearance_rel
    z = locus.contour() - complex(point)
    distance = np.abs(z).min()
    if distance < rel_tol * max(1.0, abs(point)):
        raise InconclusiveError("test point on locus", f"distance {distance:.3e} to {point}")
    steps = np.angle(z[1:] / z[:-1])
    worst = np.abs(steps).max(initial=0.0)
    if worst > np.pi / 2:
        raise GridTooCoarseError(f"phase step of {worst:.3f} rad around {point}")
    turns = steps.sum() / (2 * np.pi)
    if abs(turns - np.round(turns)) > integer_tol:
        raise GridTooCoarseError(f"accumulated phase {turns:.6f} turns is not an integer")
    return int(np.round(turns))


def nyquist_dominance(
    G: TransferFunction,
    lam: float,
    k: float,
    grid: Optional[FrequencyGrid] = None,
    indent_radius: Optional[float] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> int:
    """Dominance degree of the loop closed by the static gain ``k``.

    p₂ = p₁ + E, with p₁ the poles of G(s-λ) in the open right half-plane and E the clockwise
    encirclements of -1/k.
    """
    if k == 0:
        raise ValueError("gain must be non-zero")
    boundary = tolerances.boundary_tol(lam)
    split = pole_zero_split(G, lam, boundary)
    if split.boundary_poles and indent_radius is None:
        raise BoundaryError("boundary pole", f"G(s-{lam:g}) has a pole on the imaginary axis")
    locus = nyquist_locus(G, lam, grid, indent_radius, boundary)
    clockwise = -winding_number(locus, -1.0 / k, tolerances.locus_clearance_rel, tolerances.winding_integer)
    return split.p + clockwise


def loop_transform(G: TransferFunction, k1: float) -> TransferFunction:
    """G̃ = G/(1 + K₁G) = n/(d + K₁n), the linear part seen by φ - K₁y."""
    if k1 == 0:
        return G
    den = G.den + k1 * G.num
    if not np.any(den.coef):
        raise ValueError("1 + K₁G(s) vanishes identically")
    return TransferFunction(G.num, den, G.cancel_tol)


def locus_frame(locus: NyquistLocus) -> pd.DataFrame:
    """Locus samples as columns omega, re, im, closure (closure rows flagged with 1)."""
    omegas = locus.omegas if locus.omegas is not None else np.full(len(locus.points), np.nan)
    frame = pd.DataFrame(
        {"omega": omegas, "re": locus.points.real, "im": locus.points.imag, "closure": np.zeros(len(omegas), int)}
    )
    if locus.closure_point is not None:
        closure = pd.DataFrame(
            {"omega": [np.inf], "re": [locus.closure_point.real], "im": [locus.closure_point.imag], "closure": [1]}
        )
        frame = pd.concat([frame, closure], ignore_index=True)
    return frame
