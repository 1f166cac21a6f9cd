from .circle import (
    CircleReport,
    Disk,
    PositiveRealReport,
    circle_criterion,
    circle_inequality,
    disk,
    positive_real_test,
    positive_real_values,
)
from .grid import FrequencyGrid, default_grid, log_grid
from .nyquist import NyquistLocus, locus_frame, loop_transform, nyquist_dominance, nyquist_locus, winding_number

__all__ = [
    "CircleReport",
    "Disk",
    "PositiveRealReport",
    "circle_criterion",
    "circle_inequality",
    "disk",
    "positive_real_test",
    "positive_real_values",
    "FrequencyGrid",
    "default_grid",
    "log_grid",
    "NyquistLocus",
    "locus_frame",
    "loop_transform",
    "nyquist_dominance",
    "nyquist_locus",
    "winding_number",
]
