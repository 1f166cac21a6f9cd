import json
from pathlib import Path

import numpy as np
import pytest

SPECS_DIR = Path(__file__).resolve().parents[1] / "specs"


@pytest.fixture
def spec_path():
    def _path(name: str) -> str:
        return str(SPECS_DIR / f"{name}.json")

    return _path


@pytest.fixture
def write_spec(tmp_path):
    def _write(doc, name: str = "system") -> str:
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def assert_roots_close():
    """Compare two root multisets by greedy nearest matching."""

    def _check(actual, expected, atol=1e-8):
        remaining = list(np.asarray(actual, dtype=complex))
        assert len(remaining) == len(expected), f"{len(remaining)} roots, expected {len(expected)}"
        for z in expected:
            j = int(np.argmin([abs(a - z) for a in remaining]))
            assert abs(remaining[j] - z) < atol, f"no root near {z}: {remaining}"
            remaining.pop(j)

    return _check
