from .polynomial import as_polynomial, from_roots, poly_roots, shift_polynomial
from .state_space import StateSpace
from .transfer_function import (
    PoleZeroSplit,
    TransferFunction,
    evaluate,
    pole_zero_split,
    shift,
    statespace_from_tf,
    tf_from_statespace,
)

__all__ = [
    "as_polynomial",
    "from_roots",
    "poly_roots",
    "shift_polynomial",
    "StateSpace",
    "PoleZeroSplit",
    "TransferFunction",
    "evaluate",
    "pole_zero_split",
    "shift",
    "statespace_from_tf",
    "tf_from_statespace",
]
