"""System description files: JSON documents naming a linear part, a rate and optional extras."""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional, Tuple, Union

import numpy as np

from domkit.frequency import FrequencyGrid, default_grid, log_grid
from domkit.lti import StateSpace, TransferFunction, statespace_from_tf, tf_from_statespace
from domkit.simulate import Nonlinearity, from_table, linear, tanh_plus_linear, tanh_scaled
from domkit.utils.config import Tolerances, get_tolerances
from domkit.utils.errors import SpecError
from domkit.utils.io import load_json

KNOWN_KEYS = {
    "name",
    "transfer_function",
    "state_space",
    "lambda",
    "sector",
    "nonlinearity",
    "feedback",
    "grid",
    "simulation",
    "rate_scan",
    "tolerances",
}


@dataclass
class SimulationSettings:
    x0: np.ndarray
    dt: float
    T: float


@dataclass
class SystemSpec:
    """Validated content of a system spec file.

    ``transfer_function`` numerators and denominators are listed highest power first.
    """

    name: str
    G: TransferFunction
    linear: Optional[StateSpace]
    lam: float
    sector: Optional[Tuple[float, float]] = None
    nonlinearity: Optional[Nonlinearity] = None
    feedback_sign: int = -1
    grid_options: dict = field(default_factory=dict)
    simulation: Optional[SimulationSettings] = None
    rate_scan: dict = field(default_factory=dict)
    tolerances: Tolerances = field(default_factory=Tolerances)

    @property
    def loop(self) -> TransferFunction:
        """Transfer function seen by φ under negative feedback (positive feedback negates G)."""
        return self.G if self.feedback_sign == -1 else -self.G

    def realization(self) -> StateSpace:
        return self.linear if self.linear is not None else statespace_from_tf(self.G)

    def grid(self, G: Optional[TransferFunction] = None, lam: Optional[float] = None) -> FrequencyGrid:
        lam = self.lam if lam is None else lam
        return default_grid(self.loop if G is None else G, lam, **self.grid_options)

    def uniform_grid(self) -> Optional[FrequencyGrid]:
        return log_grid(**self.grid_options) if self.grid_options else None


def _number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(f"{key} must be a number, got {value!r}")
    if not np.isfinite(value):
        raise SpecError(f"{key} must be finite")
    return float(value)


def _vector(value: Any, key: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise SpecError(f"{key} must be a non-empty list of numbers")
    return np.array([_number(v, key) for v in value])


def _matrix(value: Any, key: str) -> np.ndarray:
    if not isinstance(value, list) or not value or not all(isinstance(row, list) for row in value):
        raise SpecError(f"{key} must be a nested list of rows")
    rows = [_vector(row, key) for row in value]
    if len({len(r) for r in rows}) != 1:
        raise SpecError(f"{key} rows have different lengths")
    return np.vstack(rows)


def _parse_linear(doc: Mapping, cancel_tol: float) -> Tuple[TransferFunction, Optional[StateSpace]]:
    has_tf, has_ss = "transfer_function" in doc, "state_space" in doc
    if has_tf == has_ss:
        raise SpecError("exactly one of transfer_function / state_space is required")
    try:
        if has_tf:
            tf = doc["transfer_function"]
            if not isinstance(tf, Mapping) or set(tf) != {"num", "den"}:
                raise SpecError("transfer_function needs keys num and den")
            num, den = _vector(tf["num"], "num"), _vector(tf["den"], "den")
            if not np.any(den):
                raise SpecError("den must not be the zero polynomial")
            return TransferFunction.from_descending(num, den, cancel_tol=cancel_tol), None
        ss = doc["state_space"]
        if not isinstance(ss, Mapping) or not {"A", "B", "C"} <= set(ss):
            raise SpecError("state_space needs keys A, B, C and optionally D")
        sys = StateSpace(
            _matrix(ss["A"], "A"),
            _matrix(ss["B"], "B"),
            _matrix(ss["C"], "C"),
            _matrix(ss["D"], "D") if "D" in ss else None,
        )
        if not sys.is_siso:
            raise SpecError("only SISO systems are supported")
        return tf_from_statespace(sys, cancel_tol), sys
    except ValueError as e:
        raise SpecError(str(e))


def _parse_nonlinearity(value: Any) -> Nonlinearity:
    if not isinstance(value, Mapping) or "kind" not in value:
        raise SpecError("nonlinearity needs a kind")
    kind = value["kind"]
    params = value.get("params", {})
    if not isinstance(params, Mapping):
        raise SpecError("nonlinearity params must be an object")
    try:
        if kind == "tanh_scaled":
            return tanh_scaled(_number(params.get("a", 1.0), "a"), _number(params.get("k", 1.0), "k"))
        if kind == "tanh_plus_linear":
            return tanh_plus_linear(_number(params.get("gain", 1.0), "gain"), _number(params.get("eps", 0.01), "eps"))
        if kind == "custom_table":
            return from_table(_vector(params.get("y"), "y"), _vector(params.get("phi"), "phi"))
        if kind == "linear":
            return linear(_number(params.get("k", 1.0), "k"))
    except ValueError as e:
        raise SpecError(str(e))
    raise SpecError(f"unknown nonlinearity kind {kind!r}")


def parse_spec(doc: Any, name: str = "spec") -> SystemSpec:
    if not isinstance(doc, Mapping):
        raise SpecError("spec must be a JSON object")
    unknown = sorted(set(doc) - KNOWN_KEYS)
    if unknown:
        raise SpecError(f"unknown keys: {', '.join(unknown)}")
    tolerances = get_tolerances(doc.get("tolerances"))
    G, sys = _parse_linear(doc, tolerances.cancel_abs)
    if "lambda" not in doc:
        raise SpecError("lambda is required")
    lam = _number(doc["lambda"], "lambda")
    if lam < 0:
        raise SpecError("lambda must be non-negative")

    spec = SystemSpec(name=str(doc.get("name", name)), G=G, linear=sys, lam=lam, tolerances=tolerances)
    if "sector" in doc:
        sector = doc["sector"]
        if not isinstance(sector, Mapping) or set(sector) != {"k1", "k2"}:
            raise SpecError("sector needs keys k1 and k2")
        k1, k2 = _number(sector["k1"], "k1"), _number(sector["k2"], "k2")
        if not k1 < k2:
            raise SpecError("sector needs k1 < k2")
        spec.sector = (k1, k2)
    if "nonlinearity" in doc:
        spec.nonlinearity = _parse_nonlinearity(doc["nonlinearity"])
    feedback = doc.get("feedback", "negative")
    if feedback not in ("negative", "positive"):
        raise SpecError("feedback must be 'negative' or 'positive'")
    spec.feedback_sign = -1 if feedback == "negative" else 1
    if "grid" in doc:
        grid = doc["grid"]
        if not isinstance(grid, Mapping) or not set(grid) <= {"omega_min", "omega_max", "points"}:
            raise SpecError("grid accepts omega_min, omega_max and points")
        options = {k: _number(v, k) for k, v in grid.items()}
        if "points" in options:
            options["points"] = int(options["points"])
        spec.grid_options = options
    if "simulation" in doc:
        sim = doc["simulation"]
        if not isinstance(sim, Mapping) or set(sim) != {"x0", "dt", "T"}:
            raise SpecError("simulation needs keys x0, dt and T")
        spec.simulation = SimulationSettings(
            _vector(sim["x0"], "x0"), _number(sim["dt"], "dt"), _number(sim["T"], "T")
        )
    if "rate_scan" in doc:
        scan = doc["rate_scan"]
        if not isinstance(scan, Mapping) or not set(scan) <= {"lambda_min", "lambda_max", "steps", "p"}:
            raise SpecError("rate_scan accepts lambda_min, lambda_max, steps and p")
        spec.rate_scan = dict(scan)
    return spec


def load_system_spec(path: Union[str, Path], **tolerance_overrides) -> SystemSpec:
    spec = parse_spec(load_json(path), Path(path).stem)
    if any(v is not None for v in tolerance_overrides.values()):
        spec.tolerances = get_tolerances(spec.tolerances.to_dict(), **tolerance_overrides)
    return spec
