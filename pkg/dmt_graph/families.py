"""Standard ground-truth graphs for the 96x96 benchmark grid.

Vertices sit at half-integer x and integer y; edges are vertical or at 45
degrees. All families satisfy the generator preconditions for omega = 3
spacings. At this placement the grid vertices of a vertex region stay
within about 2.7 spacings of its centre, which usually leaves room for the
resolution/2 margin below omega. It is not guaranteed: theta seed 5 misses
it at a wedge.
"""

from __future__ import annotations

from typing import Callable

from dmt_graph.common import ParameterError
from dmt_graph.config import GridSpec, NoiseParams
from dmt_graph.constants import DEFAULT_OMEGA_IN_SPACINGS
from dmt_graph.density import PlanarGraph

BENCHMARK_GRID = GridSpec(nx=96, ny=96)


def benchmark_params() -> NoiseParams:
    return NoiseParams(omega=DEFAULT_OMEGA_IN_SPACINGS * BENCHMARK_GRID.spacing)


def path_graph() -> PlanarGraph:
    return PlanarGraph.from_edges([(47.5, 20.0), (47.5, 76.0)], [(0, 1)])


def star_graph() -> PlanarGraph:
    """Centre plus three leaves."""
    return PlanarGraph.from_edges(
        [(47.5, 48.0), (47.5, 80.0), (22.5, 23.0), (72.5, 23.0)],
        [(0, 1), (0, 2), (0, 3)],
    )


def cycle_graph() -> PlanarGraph:
    """Diamond: south, east, north, west."""
    return PlanarGraph.from_edges(
        [(47.5, 20.0), (72.5, 45.0), (47.5, 70.0), (22.5, 45.0)],
        [(0, 1), (1, 2), (2, 3), (3, 0)],
    )


def theta_graph() -> PlanarGraph:
    """Bottom and top joined by three routes; b1 = 2."""
    return PlanarGraph.from_edges(
        [(47.5, 20.0), (20.5, 47.0), (47.5, 74.0), (74.5, 47.0)],
        [(0, 2), (0, 1), (1, 2), (0, 3), (3, 2)],
    )


def hairy_cycle_graph() -> PlanarGraph:
    """The diamond with a hair on the north and west vertices."""
    return PlanarGraph.from_edges(
        [(47.5, 20.0), (72.5, 45.0), (47.5, 70.0), (22.5, 45.0), (47.5, 86.0), (10.5, 33.0)],
        [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 5)],
    )


FAMILIES: dict[str, Callable[[], PlanarGraph]] = {
    "path": path_graph,
    "star": star_graph,
    "cycle": cycle_graph,
    "theta": theta_graph,
    "hairy-cycle": hairy_cycle_graph,
}


def family_graph(name: str) -> PlanarGraph:
    try:
        return FAMILIES[name]()
    except KeyError:
        raise ParameterError(
            f"Unsupported graph family: {name!r} (expected one of {sorted(FAMILIES)})"
        ) from None
