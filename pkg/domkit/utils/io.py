import json
import math
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Union

import jsonlines
import numpy as np
import pandas as pd

PathLike = Union[str, Path]


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, complex):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    return obj


def dump_json(obj: Any) -> str:
    """Deterministic JSON text: sorted keys, fixed indent, no bare NaN/Infinity."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_json(path: PathLike) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def write_text(text: str, path: Optional[PathLike] = None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def write_csv(frame: pd.DataFrame, path: Optional[PathLike] = None) -> None:
    """Write ``frame`` with ',' separators, '.' decimals, a header row and LF endings."""
    text = frame.to_csv(index=False, sep=",", decimal=".", lineterminator="\n")
    write_text(text, path)


def write_jsonl(rows: Iterable[dict], path: Optional[PathLike] = None) -> None:
    rows = [_jsonable(row) for row in rows]
    if path is None:
        with jsonlines.Writer(sys.stdout, sort_keys=True) as writer:
            writer.write_all(rows)
        sys.stdout.flush()
        return
    with jsonlines.open(path, mode="w", sort_keys=True) as writer:
        writer.write_all(rows)


def sidecar_path(path: PathLike, suffix: str) -> Path:
    """``out/locus.csv`` with suffix ``.disk.json`` becomes ``out/locus.disk.json``."""
    path = Path(path)
    return path.with_name(path.stem + suffix)
