from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from domkit.frequency import CircleReport, FrequencyGrid, circle_criterion
from domkit.lti import PoleZeroSplit, StateSpace, TransferFunction, pole_zero_split
from domkit.numerics import eigenvalues
from domkit.utils.config import DEFAULT_TOLERANCES, Tolerances
from domkit.utils.errors import InconclusiveError
from domkit.utils.logging import init_logger

from .kyp import kyp_frequency_test
from .passivity import admissible_passivity_degrees
from .supply import passive_supply

logger = init_logger(__name__)


def _gain_samples(k1: float, k2: float, samples: int) -> np.ndarray:
    gains = [np.linspace(k1, k2, samples), [k1, k2]]
    lo = max(k1, k2 * 1e-9) if k2 > 0 else None
    if lo is not None and lo < k2:
        gains.append(np.geomspace(lo, k2, samples))
    return np.unique(np.concatenate(gains))


def pointwise_gain_stability_scan(
    sys: StateSpace, k1: float, k2: float, samples: int = 200, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Whether A - BKC is Hurwitz for every sampled static gain K in [K₁, K₂].

    This is only a necessary condition for absolute stability; the gains are log-spaced over the
    positive part of the interval, linearly spaced over all of it, and include both endpoints.
    """
    if not sys.is_siso:
        raise ValueError("gain scan is SISO only")
    if k1 > k2:
        raise ValueError(f"need K1 <= K2, got [{k1}, {k2}]")
    for k in _gain_samples(k1, k2, samples):
        Ak = sys.closed_loop(k)
        margin = eigenvalues(Ak).real.max()
        if margin >= -tolerances.boundary_rel * (1 + np.linalg.norm(Ak, 2)):
            logger.info(f"A - BKC is not Hurwitz at K = {k:g} (spectral abscissa {margin:.3e})")
            return False
    return True


@dataclass
class RateScanRow:
    lam: float
    split: Optional[PoleZeroSplit]
    candidates: List[int] = field(default_factory=list)
    p: Optional[int] = None
    holds: bool = False
    margin: Optional[float] = None
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "pole_split": self.split.to_dict() if self.split else None,
            "candidates": sorted(self.candidates),
            "p": self.p,
            "holds": self.holds,
            "margin": self.margin,
            "reason": self.reason,
        }


def passivity_rate_scan(
    G: TransferFunction,
    lambdas: Iterable[float],
    p: Optional[int] = None,
    grid: Optional[FrequencyGrid] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    disable_tqdm: bool = True,
) -> List[RateScanRow]:
    """p-passivity margin of G over a monotone sequence of rates.

    ``margin`` is the minimum of Re G(jω-λ) over the finite grid. With ``p=None`` the requested
    degree at each rate is the number of poles of G(s-λ) in the right half-plane.
    """
    lambdas = np.asarray(list(lambdas), dtype=float)
    if np.any(np.diff(lambdas) <= 0):
        raise ValueError("rates must be strictly increasing")
    supply = passive_supply()
    rows = []
    for lam in tqdm(lambdas, desc="Rate scan", disable=disable_tqdm):
        lam = float(lam)
        split = pole_zero_split(G, lam, tolerances.boundary_tol(lam))
        row = RateScanRow(lam, split)
        if split.boundary_flag:
            row.reason = "boundary pole" if split.boundary_poles else "boundary zero"
            rows.append(row)
            continue
        row.candidates = sorted(admissible_passivity_degrees(split.relative_degree, split.r, split.n_total))
        row.p = split.p if p is None else p
        report = kyp_frequency_test(G, lam, supply, row.p, grid, tolerances)
        row.margin = report.finite_margin
        row.holds = report.p == row.p and report.finite_margin > 0
        if report.p != row.p:
            row.reason = f"G(s-λ) has {report.p} unstable poles"
        rows.append(row)
    return rows


def positive_window(rows: List[RateScanRow]) -> Optional[Tuple[float, float]]:
    """Smallest and largest rate at which the scan holds, or ``None``."""
    held = [row.lam for row in rows if row.holds]
    return (min(held), max(held)) if held else None


def scan_loop_gain(
    G: TransferFunction,
    lam: float,
    k1: float,
    k2: float,
    gains: Iterable[float],
    grid: Optional[FrequencyGrid] = None,
    disable_tqdm: bool = True,
) -> List[Tuple[float, Optional[CircleReport]]]:
    """Circle criterion for the loops K·G over a family of gains.

    Gains for which the test is inconclusive are reported with ``None``.
    """
    results = []
    for gain in tqdm(list(gains), desc="Gain scan", disable=disable_tqdm):
        try:
            results.append((float(gain), circle_criterion(float(gain) * G, lam, k1, k2, grid)))
        except InconclusiveError as e:
            logger.info(f"gain {gain:g} inconclusive: {e}")
            results.append((float(gain), None))
    return results
