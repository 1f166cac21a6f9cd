from dataclasses import dataclass, field
from numbers import Real
from typing import Optional, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy import signal

from domkit.utils.config import DEFAULT_TOLERANCES
from domkit.utils.errors import BoundaryError
from domkit.utils.logging import init_logger

from .polynomial import as_polynomial, cancel_common_roots, degree, is_zero, poly_roots, shift_polynomial, trim
from .state_space import StateSpace

logger = init_logger(__name__)


@dataclass(frozen=True, eq=False)
class TransferFunction:
    """SISO transfer function G(s) = n(s)/d(s) with real coefficients.

    The denominator is normalized to be monic and near-common roots closer than
    ``cancel_tol`` are cancelled with a warning, so poles and zeros are those of a
    minimal realization.

    Args:
        num: numerator, a ``Polynomial`` or ascending coefficients.
        den: denominator, a ``Polynomial`` or ascending coefficients.
        cancel_tol: distance under which a zero and a pole are considered common.
    """

    num: Polynomial
    den: Polynomial
    cancel_tol: float = field(default=DEFAULT_TOLERANCES.cancel_abs, repr=False)

    def __post_init__(self):
        num = self.num if isinstance(self.num, Polynomial) else as_polynomial(self.num)
        den = self.den if isinstance(self.den, Polynomial) else as_polynomial(self.den)
        num, den = trim(num), trim(den)
        if is_zero(den):
            raise ValueError("transfer function denominator is the zero polynomial")
        # ss2tf and products leave round-off in vanishing leading numerator terms
        num = trim(num, rel=1e-13)
        lead = den.coef[-1]
        num, den = Polynomial(num.coef / lead), Polynomial(den.coef / lead)
        num, den, cancelled = cancel_common_roots(num, den, self.cancel_tol)
        if len(cancelled):
            logger.warning(f"cancelled {len(cancelled)} near-common pole/zero pair(s) at {np.round(cancelled, 9)}")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        if not self.is_proper:
            logger.warning(f"transfer function is not proper (relative degree {self.relative_degree})")

    @classmethod
    def from_descending(cls, num, den, **kwargs) -> "TransferFunction":
        """Build from coefficient lists ordered highest power first (the scipy/control layout)."""
        return cls(as_polynomial(num, descending=True), as_polynomial(den, descending=True), **kwargs)

    @property
    def order(self) -> int:
        return degree(self.den)

    @property
    def relative_degree(self) -> int:
        if is_zero(self.num):
            return self.order + 1
        return degree(self.den) - degree(self.num)

    @property
    def is_proper(self) -> bool:
        return self.relative_degree >= 0

    @property
    def is_strictly_proper(self) -> bool:
        return self.relative_degree > 0

    @property
    def feedthrough(self) -> float:
        """Limit of G(s) as |s| → ∞ (the D term)."""
        if self.relative_degree > 0:
            return 0.0
        if self.relative_degree < 0:
            return np.inf
        return float(self.num.coef[-1] / self.den.coef[-1])

    def poles(self) -> np.ndarray:
        return poly_roots(self.den)

    def zeros(self) -> np.ndarray:
        if is_zero(self.num):
            return np.zeros(0, dtype=complex)
        return poly_roots(self.num)

    def evaluate(self, s, tol: float = 1e-12):
        """Evaluate n(s)/d(s) at a scalar or an array of complex points.

        Raises:
            BoundaryError: if ``s`` is (numerically) a pole.
        """
        s = np.asarray(s, dtype=complex)
        d = self.den(s)
        scale = np.sum(np.abs(self.den.coef)) * np.maximum(1.0, np.abs(s)) ** self.order
        if np.any(np.abs(d) <= tol * scale):
            raise BoundaryError("pole", "transfer function evaluated at a pole")
        value = self.num(s) / d
        return complex(value) if value.ndim == 0 else value

    def __call__(self, s):
        return self.evaluate(s)

    def dc_gain(self) -> float:
        return self.evaluate(0.0).real

    def shift(self, lam: float) -> "TransferFunction":
        return shift(self, lam)

    def __neg__(self) -> "TransferFunction":
        return TransferFunction(-self.num, self.den, self.cancel_tol)

    def __mul__(self, other: Union["TransferFunction", Real]) -> "TransferFunction":
        if isinstance(other, TransferFunction):
            return TransferFunction(self.num * other.num, self.den * other.den, self.cancel_tol)
        if isinstance(other, Real):
            return TransferFunction(self.num * float(other), self.den, self.cancel_tol)
        return NotImplemented

    __rmul__ = __mul__

    def coefficients(self):
        """Numerator and denominator coefficients, highest power first."""
        return self.num.coef[::-1].tolist(), self.den.coef[::-1].tolist()

    def __repr__(self):
        num, den = self.coefficients()
        return f"TransferFunction(num={num}, den={den})"


@dataclass(frozen=True)
class PoleZeroSplit:
    """Pole and zero counts of G(s-λ) relative to the open right half-plane.

    Boundary elements (|Re| ≤ tol after the shift) are flagged and left out of ``p`` and ``r``.
    """

    p: int
    n_total: int
    q: int
    r: int
    boundary_flag: bool
    boundary_poles: int = 0
    boundary_zeros: int = 0

    @property
    def relative_degree(self) -> int:
        return self.n_total - self.q

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n_total": self.n_total,
            "q": self.q,
            "r": self.r,
            "relative_degree": self.relative_degree,
            "boundary_flag": self.boundary_flag,
            "boundary_poles": self.boundary_poles,
            "boundary_zeros": self.boundary_zeros,
        }


def shift(G: TransferFunction, lam: float) -> TransferFunction:
    """H(s) = G(s - λ); the poles of H are the poles of G moved right by λ."""
    if lam < 0:
        raise ValueError(f"rate must be non-negative, got {lam}")
    if lam == 0:
        return G
    return TransferFunction(shift_polynomial(G.num, lam), shift_polynomial(G.den, lam), G.cancel_tol)


def evaluate(G: TransferFunction, s):
    return G.evaluate(s)


def pole_zero_split(G: TransferFunction, lam: float, tol: Optional[float] = None) -> PoleZeroSplit:
    if tol is None:
        tol = DEFAULT_TOLERANCES.boundary_tol(lam)
    H = shift(G, lam)
    poles = H.poles()
    zeros = H.zeros()
    pole_on_axis = np.abs(poles.real) <= tol
    zero_on_axis = np.abs(zeros.real) <= tol
    return PoleZeroSplit(
        p=int(np.sum((poles.real > tol))),
        n_total=len(poles),
        q=len(zeros),
        r=int(np.sum(zeros.real > tol)),
        boundary_flag=bool(pole_on_axis.any() or zero_on_axis.any()),
        boundary_poles=int(pole_on_axis.sum()),
        boundary_zeros=int(zero_on_axis.sum()),
    )


def tf_from_statespace(sys: StateSpace, cancel_tol: float = DEFAULT_TOLERANCES.cancel_abs) -> TransferFunction:
    """G(s) = C(sI - A)⁻¹B + D for a SISO state-space model."""
    if not sys.is_siso:
        raise ValueError(f"transfer functions are SISO only, got {sys.outputs}x{sys.inputs}")
    if sys.order == 0:
        return TransferFunction([float(sys.D[0, 0])], [1.0], cancel_tol)
    num, den = signal.ss2tf(sys.A, sys.B, sys.C, sys.D)
    return TransferFunction.from_descending(np.atleast_2d(num)[0], den, cancel_tol=cancel_tol)


def statespace_from_tf(G: TransferFunction) -> StateSpace:
    """Controllable-canonical realization of a proper SISO transfer function."""
    if not G.is_proper:
        raise ValueError("only proper transfer functions have a state-space realization")
    num, den = G.coefficients()
    A, B, C, D = signal.tf2ss(num, den)
    return StateSpace(A, B, C, D)
