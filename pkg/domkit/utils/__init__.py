from .config import DEFAULT_TOLERANCES, Tolerances, get_tolerances
from .errors import (
    BoundaryError,
    DomkitError,
    GridTooCoarseError,
    InconclusiveError,
    NumericsError,
    SingularLyapunovError,
    SpecError,
)
from .logging import init_logger

__all__ = [
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "get_tolerances",
    "BoundaryError",
    "DomkitError",
    "GridTooCoarseError",
    "InconclusiveError",
    "NumericsError",
    "SingularLyapunovError",
    "SpecError",
    "init_logger",
]
