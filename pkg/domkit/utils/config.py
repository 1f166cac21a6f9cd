from dataclasses import dataclass, fields, replace
from typing import Any, Mapping, Optional

from .errors import SpecError


@dataclass(frozen=True)
class Tolerances:
    """Default numerical tolerances, overridable per spec file or CLI flag."""

    zero_eig_rel: float = 1e-9
    boundary_rel: float = 1e-9
    cancel_abs: float = 1e-7
    lmi: float = 1e-8
    strict_rel: float = 1e-7
    locus_clearance_rel: float = 1e-6
    winding_integer: float = 1e-3
    fixed_point_rel: float = 1e-4
    recurrence_rel: float = 1e-3
    transient_fraction: float = 0.5

    def boundary_tol(self, lam: float) -> float:
        return self.boundary_rel * (1.0 + abs(lam))

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_TOLERANCES = Tolerances()


def get_tolerances(overrides: Optional[Mapping[str, Any]] = None, **kwargs) -> Tolerances:
    """Merge ``overrides`` and keyword overrides over :data:`DEFAULT_TOLERANCES`.

    ``None`` values are ignored so that unset CLI flags fall through to the defaults.
    """
    merged = dict(overrides or {})
    merged.update(kwargs)
    known = {f.name for f in fields(Tolerances)}
    unknown = sorted(set(merged) - known)
    if unknown:
        raise SpecError(f"unknown tolerance keys: {', '.join(unknown)}")
    values = {}
    for key, value in merged.items():
        if value is None:
            continue
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise SpecError(f"tolerance {key} must be a number, got {value!r}")
        if not value > 0:
            raise SpecError(f"tolerance {key} must be positive, got {value}")
        values[key] = value
    tol = replace(DEFAULT_TOLERANCES, **values)
    if tol.transient_fraction >= 1:
        raise SpecError("transient_fraction must be below 1")
    return tol
