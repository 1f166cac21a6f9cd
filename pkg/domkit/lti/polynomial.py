"""Real polynomials in ascending coefficient order, backed by ``numpy.polynomial.Polynomial``."""
from math import comb
from typing import Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from domkit.numerics import eigenvalues


def as_polynomial(coefficients, descending: bool = False) -> Polynomial:
    coef = np.atleast_1d(np.asarray(coefficients, dtype=float))
    if coef.ndim != 1 or coef.size == 0:
        raise ValueError("polynomial coefficients must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(coef)):
        raise ValueError("polynomial coefficients must be finite")
    if descending:
        coef = coef[::-1]
    return trim(Polynomial(coef))


def trim(p: Polynomial, rel: float = 0.0) -> Polynomial:
    """Drop leading (highest-degree) coefficients with magnitude at most ``rel·max|c|``."""
    coef = np.asarray(p.coef, dtype=float)
    bound = rel * np.max(np.abs(coef), initial=0.0)
    last = len(coef) - 1
    while last > 0 and abs(coef[last]) <= bound:
        last -= 1
    return Polynomial(coef[: last + 1].copy())


def is_zero(p: Polynomial) -> bool:
    return not np.any(p.coef)


def degree(p: Polynomial) -> int:
    """Degree with the zero polynomial reported as -1."""
    return -1 if is_zero(p) else len(trim(p).coef) - 1


def poly_roots(p: Polynomial) -> np.ndarray:
    """Roots as eigenvalues of the companion matrix; conjugate-closed for real coefficients."""
    p = trim(p)
    if is_zero(p):
        raise ValueError("the zero polynomial has no well-defined roots")
    coef = p.coef
    n = len(coef) - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    companion = np.zeros((n, n))
    companion[0, :] = -coef[-2::-1] / coef[-1]
    companion[1:, :-1] = np.eye(n - 1)
    return eigenvalues(companion)


def from_roots(roots: Sequence[complex], leading: float = 1.0) -> Polynomial:
    """Real polynomial ``leading·∏(s - rᵢ)``; ``roots`` must be conjugate-closed."""
    if len(roots) == 0:
        return Polynomial([leading])
    coef = np.real(np.poly(np.asarray(roots, dtype=complex)))[::-1]
    return Polynomial(leading * coef)


def shift_polynomial(p: Polynomial, lam: float) -> Polynomial:
    """Coefficients of q(s) = p(s - λ) by binomial re-expansion."""
    coef = p.coef
    out = np.zeros(len(coef))
    for i, a in enumerate(coef):
        if a == 0:
            continue
        for k in range(i + 1):
            out[k] += a * comb(i, k) * (-lam) ** (i - k)
    return Polynomial(out)


def cancel_common_roots(
    num: Polynomial, den: Polynomial, tol: float
) -> Tuple[Polynomial, Polynomial, np.ndarray]:
    """Remove root pairs of ``num`` and ``den`` closer than ``tol``.

    Returns the reduced numerator, the reduced denominator and the cancelled denominator roots.
    Polynomials with nothing to cancel are returned unchanged.
    """
    if is_zero(num) or degree(num) == 0 or degree(den) == 0:
        return num, den, np.zeros(0, dtype=complex)
    zeros = list(poly_roots(num))
    poles = list(poly_roots(den))
    cancelled = []
    for z in list(zeros):
        if not poles:
            break
        dist = np.abs(np.asarray(poles) - z)
        j = int(np.argmin(dist))
        if dist[j] < tol:
            cancelled.append(poles.pop(j))
            zeros.remove(z)
    if not cancelled:
        return num, den, np.zeros(0, dtype=complex)
    num = from_roots(_conjugate_closed(zeros), num.coef[-1])
    den = from_roots(_conjugate_closed(poles), den.coef[-1])
    return num, den, np.asarray(cancelled)


def _conjugate_closed(roots):
    roots = np.asarray(roots, dtype=complex)
    # Nearly-real roots are snapped so np.poly returns a real polynomial.
    return np.where(np.abs(roots.imag) < 1e-12 * (1 + np.abs(roots.real)), roots.real, roots)
