"""Pytest configuration for dmt-graph unit tests."""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add the project root to sys.path so dmt_graph can be imported
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from dmt_graph.complex import build_complex  # noqa: E402
from dmt_graph.config import GridSpec, NoiseParams  # noqa: E402
from dmt_graph.density import DensityField, PlanarGraph  # noqa: E402


def field_from_rows(rows, spacing=1.0):
    """DensityField from a list of rows, row 0 at the lowest y."""
    values = np.asarray(rows, dtype=np.float64)
    grid = GridSpec(nx=values.shape[1], ny=values.shape[0], spacing=spacing)
    return DensityField(grid, values.reshape(-1))


@pytest.fixture
def make_field():
    return field_from_rows


@pytest.fixture
def grid_2x2():
    return GridSpec(nx=2, ny=2)


@pytest.fixture
def complex_2x2(grid_2x2):
    return build_complex(grid_2x2)


@pytest.fixture
def complex_4x4():
    return build_complex(GridSpec(nx=4, ny=4))


@pytest.fixture
def rectangle_cycle():
    """Axis-aligned square cycle on a 24x24 grid."""
    return PlanarGraph.from_edges(
        [(4.0, 4.0), (19.0, 4.0), (19.0, 19.0), (4.0, 19.0)],
        [(0, 1), (1, 2), (2, 3), (3, 0)],
    )


@pytest.fixture
def grid_24():
    return GridSpec(nx=24, ny=24)


@pytest.fixture
def noiseless_params():
    return NoiseParams(omega=2.0, beta1=10.0, beta2=4.0, nu=0.0)


@pytest.fixture
def small_star():
    """Three-leaf star for a 64x64 grid at spacing 0.25."""
    return PlanarGraph.from_edges(
        [(8.0, 8.0), (8.0, 13.0), (4.0, 4.0), (12.0, 4.0)],
        [(0, 1), (0, 2), (0, 3)],
    )


@pytest.fixture
def grid_64_quarter():
    return GridSpec(nx=64, ny=64, spacing=0.25)


@pytest.fixture
def star_params():
    return NoiseParams(omega=0.5, beta1=10.0, beta2=4.0, nu=1.0)
