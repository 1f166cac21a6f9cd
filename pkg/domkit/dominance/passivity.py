from typing import Optional, Set

from domkit.lti import PoleZeroSplit, TransferFunction, pole_zero_split
from domkit.utils.errors import BoundaryError


def admissible_passivity_degrees(relative_degree: int, r: int, n_total: int) -> Set[int]:
    """Degrees p compatible with relative degree Δ and r right-half-plane zeros.

    p-passivity needs Δ ≤ 2p + 1 and p - (Δ+1)/2 ≤ r ≤ p - (Δ-1)/2.
    """
    delta = relative_degree
    return {
        p
        for p in range(n_total + 1)
        if delta <= 2 * p + 1 and 2 * p - delta - 1 <= 2 * r <= 2 * p - delta + 1
    }


def passivity_degree_candidates(
    G: TransferFunction, lam: float, tol: Optional[float] = None, split: Optional[PoleZeroSplit] = None
) -> Set[int]:
    """Necessary condition: the only p for which G can be p-passive with rate λ.

    Raises:
        BoundaryError: if a pole or zero of G(s-λ) lies on the imaginary axis.
    """
    split = split if split is not None else pole_zero_split(G, lam, tol)
    if split.boundary_flag:
        kind = "boundary pole" if split.boundary_poles else "boundary zero"
        raise BoundaryError(kind, f"G(s-{lam:g}) has elements on the imaginary axis")
    return admissible_passivity_degrees(split.relative_degree, split.r, split.n_total)
