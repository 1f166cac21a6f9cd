from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import numpy as np

from domkit.lti import TransferFunction, pole_zero_split, shift
from domkit.utils.config import DEFAULT_TOLERANCES, Tolerances
from domkit.utils.errors import BoundaryError, InconclusiveError
from domkit.utils.logging import init_logger

from .grid import FrequencyGrid, default_grid
from .nyquist import loop_transform, nyquist_locus, winding_number

logger = init_logger(__name__)


@dataclass(frozen=True)
class Disk:
    """Forbidden region of the circle criterion for slopes in [K₁, K₂].

    ``mode`` is ``"outside"`` or ``"inside"`` (where the locus must stay relative to the disk)
    or ``"half_plane"``, in which case the locus must satisfy ``side·(Re G - threshold) > 0``
    and ``center``/``radius`` are ``threshold``/0.
    """

    center: float
    radius: float
    mode: str
    threshold: Optional[float] = None
    side: int = 1

    def clearance(self, values) -> float:
        """Smallest signed distance of ``values`` into the admissible region (positive = admissible)."""
        values = np.asarray(values, dtype=complex)
        if self.mode == "half_plane":
            return float(np.min(self.side * (values.real - self.threshold)))
        distance = np.abs(values - self.center)
        if self.mode == "outside":
            return float(np.min(distance - self.radius))
        return float(np.min(self.radius - distance))

    def to_dict(self) -> dict:
        return asdict(self)


def disk(k1: float, k2: float) -> Disk:
    if k1 >= k2:
        raise ValueError(f"sector needs K1 < K2, got [{k1}, {k2}]")
    if k1 == 0:
        threshold = -1.0 / k2
        return Disk(threshold, 0.0, "half_plane", threshold, 1)
    if k2 == 0:
        threshold = -1.0 / k1
        return Disk(threshold, 0.0, "half_plane", threshold, -1)
    center = -(k1 + k2) / (2 * k1 * k2)
    radius = (k2 - k1) / (2 * abs(k1 * k2))
    return Disk(center, radius, "inside" if k1 < 0 < k2 else "outside")


def positive_real_values(values, k1: float, k2: float) -> np.ndarray:
    """Re{(1 + K₂G)/(1 + K₁G)} for sampled values of G."""
    values = np.asarray(values, dtype=complex)
    return ((1 + k2 * values) / (1 + k1 * values)).real


def circle_inequality(values, k1: float, k2: float) -> np.ndarray:
    """K₁K₂Y² + (K₁X + 1)(K₂X + 1), the numerator of the positive-real margin."""
    values = np.asarray(values, dtype=complex)
    x, y = values.real, values.imag
    return k1 * k2 * y**2 + (k1 * x + 1) * (k2 * x + 1)


@dataclass(frozen=True)
class PositiveRealReport:
    holds: bool
    min_margin: float
    argmin_omega: float
    threshold: float


def positive_real_test(
    G: TransferFunction,
    lam: float,
    k1: float,
    k2: float,
    grid: Optional[FrequencyGrid] = None,
    strict_rel: float = DEFAULT_TOLERANCES.strict_rel,
) -> PositiveRealReport:
    """Check Re Z(jω - λ) > 0 for Z = (1 + K₂G)/(1 + K₁G) over the grid and at ω = ∞."""
    grid = grid if grid is not None else default_grid(G, lam)
    H = shift(G, lam)
    omegas = grid.nonnegative()
    values = np.append(H.evaluate(1j * omegas), H.feedthrough)
    omegas = np.append(omegas, np.inf)
    vanishing = np.abs(1 + k1 * values) <= 1e-12 * (1 + abs(k1) * np.abs(values))
    if np.any(vanishing):
        where = "at ω = ∞" if vanishing[-1] else "on the grid"
        raise InconclusiveError("denominator vanishing", f"1 + K1·G(jω-λ) = 0 {where}")
    margins = positive_real_values(values, k1, k2)
    i = int(np.argmin(margins))
    threshold = strict_rel * (1 + abs(k1) + abs(k2))
    return PositiveRealReport(bool(margins[i] > threshold), float(margins[i]), float(omegas[i]), threshold)


@dataclass
class CircleReport:
    """Outcome of the dominance circle criterion.

    ``verdict`` holds the dominance degree when clauses ii)-iv) all pass, otherwise ``reason``
    says which clause failed. ``encirclements`` counts clockwise turns around -1/K₁.
    """

    lam: float
    k1: float
    k2: float
    verdict: Optional[int]
    reason: Optional[str]
    encirclements: int
    pole_count_q: int
    disk: Disk
    disk_clearance: float
    margin: float
    transformed_pole_count: int
    consistent_p: List[int] = field(default_factory=list)
    conditions: Dict[str, Optional[bool]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is not None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["disk"] = self.disk.to_dict()
        return out


def circle_criterion(
    G: TransferFunction,
    lam: float,
    k1: float,
    k2: float,
    grid: Optional[FrequencyGrid] = None,
    indent_radius: Optional[float] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> CircleReport:
    """Dominance degree of G in feedback with every φ whose slope lies in [K₁, K₂].

    Clause ii) requires no poles of G on the shifted boundary, clause iii) E = p - q clockwise
    encirclements of -1/K₁ (none when K₁ = 0) and clause iv) the locus in the admissible region
    of :func:`disk`. The verdict q + E is cross-checked against the pole count of G/(1 + K₁G).

    Raises:
        BoundaryError: boundary pole without indentation.
        InconclusiveError: the locus grazes the disk or -1/K₁ within tolerance.
    """
    region = disk(k1, k2)
    split = pole_zero_split(G, lam, tolerances.boundary_tol(lam))
    if split.boundary_poles and indent_radius is None:
        raise BoundaryError("boundary pole", f"G(s-{lam:g}) has a pole on the imaginary axis")
    grid = grid if grid is not None else default_grid(G, lam)
    locus = nyquist_locus(G, lam, grid, indent_radius, tolerances.boundary_tol(lam))
    q = split.p
    n = split.n_total

    encirclements = (
        0 if k1 == 0 else -winding_number(locus, -1.0 / k1, tolerances.locus_clearance_rel, tolerances.winding_integer)
    )

    samples = np.append(locus.points, locus.closure_point)
    clearance = region.clearance(samples)
    grazing = tolerances.locus_clearance_rel * (1 + abs(region.center) + region.radius)
    if abs(clearance) <= grazing:
        raise InconclusiveError("locus grazes disk", f"clearance {clearance:.3e} within {grazing:.3e}")

    with np.errstate(divide="ignore", invalid="ignore"):
        margins = positive_real_values(samples, k1, k2)
    margin = float(np.nanmin(margins)) if np.all(np.isfinite(margins)) else -np.inf

    consistent = [p for p in range(n + 1) if p - q == encirclements]
    conditions = {"i": None, "ii": True, "iii": bool(consistent), "iv": clearance > 0}

    transformed = loop_transform(G, k1)
    transformed_count = pole_zero_split(transformed, lam, tolerances.boundary_tol(lam)).p

    reason = None
    if not conditions["iii"]:
        reason = f"encirclement count {encirclements} admits no p in 0..{n}"
    elif not conditions["iv"]:
        reason = "locus enters the forbidden disk"
    elif transformed_count != q + encirclements:
        raise InconclusiveError(
            "encirclement count disagrees with loop-transformed poles",
            f"q + E = {q + encirclements}, G/(1+K1 G) has {transformed_count}",
        )
    verdict = None if reason else q + encirclements
    if reason:
        logger.warning(f"circle criterion rejected at rate {lam:g}, sector [{k1:g}, {k2:g}]: {reason}")
    return CircleReport(
        lam=lam,
        k1=k1,
        k2=k2,
        verdict=verdict,
        reason=reason,
        encirclements=encirclements,
        pole_count_q=q,
        disk=region,
        disk_clearance=clearance,
        margin=margin,
        transformed_pole_count=transformed_count,
        consistent_p=consistent,
        conditions=conditions,
    )
