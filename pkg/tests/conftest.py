"""Shared pytest configuration and fixtures."""

# pylint: disable=missing-function-docstring,redefined-outer-name

import json
from pathlib import Path

import numpy as np
import pytest

from evmsep.models.state import BipartiteDims, DensityMatrix
from evmsep.storage import write_state

_DIM_PAIRS = ((2, 2), (2, 3), (3, 3), (2, 4))

_SEED = 20240611


def pytest_addoption(parser):
    parser.addoption("--integration", action="store_true", default=False, help="Run integration tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "integration: long reproduction runs (run with --integration)")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--integration"):
        skip = pytest.mark.skip(reason="pass --integration to run")
        for item in items:
            if "integration" in item.keywords:
                item.add_marker(skip)


@pytest.fixture(params=_DIM_PAIRS, ids=lambda pair: f"{pair[0]}x{pair[1]}")
def dims(request) -> BipartiteDims:
    """Dimension pairs the property-style tests sweep over."""
    return BipartiteDims(*request.param)


@pytest.fixture
def rng():
    """Explicitly seeded generator; test order never changes the sampled states."""
    return np.random.default_rng(_SEED)


@pytest.fixture
def state_file(tmp_path):
    def _write(rho: DensityMatrix, name: str = "state.json", provenance: dict | None = None) -> Path:
        return write_state(tmp_path / name, rho, provenance)

    return _write


@pytest.fixture
def raw_state_file(tmp_path):
    """Writes a container whose matrix is given as a plain complex array (no validation)."""

    def _write(matrix, dims=(2, 2), name: str = "raw.json") -> Path:
        cells = [[[float(np.real(z)), float(np.imag(z))] for z in row] for row in np.asarray(matrix, dtype=complex)]
        path = tmp_path / name
        path.write_text(json.dumps({"format": "evmsep-state", "dims": list(dims), "matrix": cells}), encoding="utf-8")
        return path

    return _write
