from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from domkit.frequency.grid import FrequencyGrid, default_grid
from domkit.lti import TransferFunction, pole_zero_split, shift
from domkit.utils.config import DEFAULT_TOLERANCES, Tolerances
from domkit.utils.errors import BoundaryError

from .supply import Supply


@dataclass(frozen=True)
class KypReport:
    """Frequency-domain p-dissipativity test of a SISO transfer function.

    Args:
        holds: pole count matches ``requested_p`` and ``min_margin >= 0``.
        strict: ``holds`` with every margin, including ω = ∞, above ``threshold``.
        p: poles of G(s-λ) in the open right half-plane.
        min_margin: minimum of q(ω) over the grid and ω = ∞.
        argmin_omega: where ``min_margin`` is attained (``inf`` for the infinite frequency).
        finite_margin: minimum over the finite grid only.
        infinity_margin: q(∞), fixed by the feedthrough.
    """

    holds: bool
    strict: bool
    p: int
    requested_p: int
    min_margin: float
    argmin_omega: float
    finite_margin: float
    infinity_margin: float
    threshold: float

    def to_dict(self) -> dict:
        return asdict(self)


def supply_form(values, supply: Supply) -> np.ndarray:
    """q = Q|G|² + 2L·Re G + R for sampled values of G."""
    Q, L, R = supply.scalars()
    values = np.asarray(values, dtype=complex)
    return Q * np.abs(values) ** 2 + 2 * L * values.real + R


def kyp_frequency_test(
    G: TransferFunction,
    lam: float,
    supply: Supply,
    p: int,
    grid: Optional[FrequencyGrid] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> KypReport:
    """p-dissipativity of G with rate λ via the frequency inequality on the shifted axis.

    Raises:
        BoundaryError: if G(s-λ) has a pole on the imaginary axis.
    """
    split = pole_zero_split(G, lam, tolerances.boundary_tol(lam))
    if split.boundary_poles:
        raise BoundaryError("boundary pole", f"G(s-{lam:g}) has a pole on the imaginary axis")
    grid = grid if grid is not None else default_grid(G, lam)
    H = shift(G, lam)
    omegas = grid.nonnegative()
    margins = supply_form(H.evaluate(1j * omegas), supply)
    at_infinity = float(supply_form(H.feedthrough, supply))

    i = int(np.argmin(margins))
    finite = float(margins[i])
    if at_infinity < finite:
        worst, argmin = at_infinity, np.inf
    else:
        worst, argmin = finite, float(omegas[i])
    threshold = tolerances.strict_rel * (1 + supply.scale())
    holds = split.p == p and worst >= 0
    strict = holds and finite > threshold and at_infinity > threshold
    return KypReport(
        holds=bool(holds),
        strict=bool(strict),
        p=split.p,
        requested_p=p,
        min_margin=worst,
        argmin_omega=argmin,
        finite_margin=finite,
        infinity_margin=at_infinity,
        threshold=threshold,
    )
