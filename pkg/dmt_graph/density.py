"""Ground-truth graphs, the two-threshold noise model and density fields."""

from __future__ import annotations

import enum
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import msgspec
import networkx as nx
import numpy as np
from numpy.typing import NDArray

from dmt_graph.common import (
    FieldSizeError,
    GenerationError,
    GraphError,
    GridError,
    ParameterError,
    point_polyline_distances,
    segment_segment_distance,
)
from dmt_graph.config import GridSpec, NoiseParams
from dmt_graph.constants import (
    EMBEDDING_TOLERANCE,
    KDE_TRUNCATION_BANDWIDTHS,
    MAX_SPACING_PER_OMEGA,
    NOISE_MODE_CHECKER,
    NOISE_MODE_HIGH,
    NOISE_MODE_LOW,
    NOISE_MODE_UNIFORM,
    NOISE_MODES,
)

logger = logging.getLogger(__name__)

Point = tuple[float, float]


class RegionLabel(enum.IntEnum):
    """Which case of the noise model a point falls in."""

    VERTEX_REGION = 0
    EDGE_REGION = 1
    OUTSIDE = 2


class GraphEdge(msgspec.Struct, frozen=True):
    """An embedded edge between vertices ``u`` and ``v``.

    ``polyline`` defaults to the straight segment between the endpoints.
    """

    u: int
    v: int
    polyline: tuple[Point, ...] | None = None


class PlanarGraph(msgspec.Struct, frozen=True):
    """A finite graph embedded in the plane with polyline edges."""

    vertices: tuple[Point, ...]
    edges: tuple[GraphEdge, ...] = ()

    @classmethod
    def from_edges(cls, vertices: Sequence[Point], pairs: Sequence[tuple[int, int]]) -> PlanarGraph:
        """Straight-line graph from vertex coordinates and index pairs."""
        return cls(
            vertices=tuple((float(x), float(y)) for x, y in vertices),
            edges=tuple(GraphEdge(int(u), int(v)) for u, v in pairs),
        )

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex_array(self) -> NDArray[np.float64]:
        return np.asarray(self.vertices, dtype=np.float64).reshape(-1, 2)

    def edge_polyline(self, k: int) -> NDArray[np.float64]:
        edge = self.edges[k]
        if edge.polyline is None:
            return np.array([self.vertices[edge.u], self.vertices[edge.v]], dtype=np.float64)
        return np.asarray(edge.polyline, dtype=np.float64).reshape(-1, 2)

    def polylines(self) -> list[NDArray[np.float64]]:
        return [self.edge_polyline(k) for k in range(len(self.edges))]

    def validate(self, tol: float = EMBEDDING_TOLERANCE) -> None:
        """Check simplicity, endpoint agreement and planarity of the embedding.

        Raises
        ------
        GraphError
            Naming the first violated invariant.
        """
        n = len(self.vertices)
        seen: set[tuple[int, int]] = set()
        for k, edge in enumerate(self.edges):
            if not (0 <= edge.u < n and 0 <= edge.v < n):
                raise GraphError(f"edge {k} references a missing vertex ({edge.u}, {edge.v})")
            if edge.u == edge.v:
                raise GraphError(f"edge {k} is a self-loop at vertex {edge.u}")
            key = (min(edge.u, edge.v), max(edge.u, edge.v))
            if key in seen:
                raise GraphError(f"edge {k} duplicates edge {key}")
            seen.add(key)
            line = self.edge_polyline(k)
            if len(line) < 2:
                raise GraphError(f"edge {k} polyline needs at least two points")
            if np.hypot(*(line[0] - self.vertices[edge.u])) > tol or np.hypot(
                *(line[-1] - self.vertices[edge.v])
            ) > tol:
                raise GraphError(f"edge {k} polyline does not start/end at its endpoints")

        for a, b in itertools.combinations(range(len(self.edges)), 2):
            shared = {self.edges[a].u, self.edges[a].v} & {self.edges[b].u, self.edges[b].v}
            if self._edges_touch(a, b, shared, tol):
                raise GraphError(f"edges {a} and {b} intersect away from a shared endpoint")

    def _edges_touch(self, a: int, b: int, shared: set[int], tol: float) -> bool:
        pa = self.edge_polyline(a)
        pb = self.edge_polyline(b)
        shared_points = [np.asarray(self.vertices[w], dtype=np.float64) for w in shared]
        for s in range(len(pa) - 1):
            for t in range(len(pb) - 1):
                if segment_segment_distance(pa[s], pa[s + 1], pb[t], pb[t + 1]) > tol:
                    continue
                # Contact is allowed only at a shared endpoint, with no overlap beyond it.
                w = next(
                    (
                        p for p in shared_points
                        if min(np.hypot(*(pa[s] - p)), np.hypot(*(pa[s + 1] - p))) <= tol
                        and min(np.hypot(*(pb[t] - p)), np.hypot(*(pb[t + 1] - p))) <= tol
                    ),
                    None,
                )
                if w is None:
                    return True
                far_a = pa[s] if np.hypot(*(pa[s + 1] - w)) <= tol else pa[s + 1]
                far_b = pb[t] if np.hypot(*(pb[t + 1] - w)) <= tol else pb[t + 1]
                if (
                    point_polyline_distances(far_a, np.array([pb[t], pb[t + 1]]))[0] <= tol
                    or point_polyline_distances(far_b, np.array([pa[s], pa[s + 1]]))[0] <= tol
                ):
                    return True
        return False

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        g.add_edges_from((e.u, e.v) for e in self.edges)
        return nx.is_connected(g)


@dataclass(frozen=True)
class DensityField:
    """A density value on every grid vertex.

    ``values`` is a flat float64 array of length ``nx * ny`` in vertex index
    order (row-major, row 0 at the lowest y).
    """

    grid: GridSpec
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if values.size != self.grid.nx * self.grid.ny:
            raise FieldSizeError(
                f"density has {values.size} values, grid {self.grid.nx}x{self.grid.ny} "
                f"needs {self.grid.nx * self.grid.ny}"
            )
        if not np.all(np.isfinite(values)):
            raise FieldSizeError("density values must be finite")
        if values.size and values.min() < 0:
            raise FieldSizeError(f"density values must be >= 0, min was {values.min()}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def as_image(self) -> NDArray[np.float64]:
        """Values as a (ny, nx) array, row 0 at the lowest y."""
        return self.values.reshape(self.grid.ny, self.grid.nx)


# -- classification ---------------------------------------------------------


def classify_points(
    graph: PlanarGraph,
    params: NoiseParams,
    points: NDArray[np.float64],
) -> NDArray[np.int8]:
    """Vectorised :func:`classify_point` over an (n, 2) array of points."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    labels = np.full(len(points), RegionLabel.OUTSIDE, dtype=np.int8)
    if len(points) == 0 or graph.num_vertices == 0:
        return labels
    edge_dist = np.full(len(points), np.inf)
    for line in graph.polylines():
        np.minimum(edge_dist, point_polyline_distances(points, line), out=edge_dist)
    labels[edge_dist <= params.omega] = RegionLabel.EDGE_REGION
    verts = graph.vertex_array()
    vert_dist = np.full(len(points), np.inf)
    for v in verts:
        np.minimum(vert_dist, np.hypot(points[:, 0] - v[0], points[:, 1] - v[1]), out=vert_dist)
    labels[vert_dist <= params.omega] = RegionLabel.VERTEX_REGION
    return labels


def classify_point(graph: PlanarGraph, params: NoiseParams, p: Point) -> RegionLabel:
    """Region of ``p``: vertex regions take priority over edge regions."""
    return RegionLabel(int(classify_points(graph, params, np.array([p]))[0]))


# -- noise model ----------------------------------------------------------------


def delta_range(params: NoiseParams) -> tuple[float, float]:
    """Open interval of valid persistence cut-offs for ``params``."""
    params.validate()
    return (params.nu, min(params.beta2 - params.nu, params.beta1 - params.beta2 - params.nu))


def check_generation_preconditions(graph: PlanarGraph, params: NoiseParams, grid: GridSpec) -> None:
    """Validate the checkable sufficient conditions for a faithful synthetic field.

    Raises
    ------
    GenerationError
        Naming the failed check.
    """
    try:
        params.validate()
    except ParameterError as e:
        raise GenerationError(f"parameter inequality: {e}") from e
    try:
        grid.validate()
        graph.validate()
    except (GridError, GraphError) as e:
        raise GenerationError(f"invalid input: {e}") from e
    if graph.num_vertices == 0:
        raise GenerationError("invalid input: graph has no vertices")

    omega = params.omega
    if grid.spacing > MAX_SPACING_PER_OMEGA * omega:
        raise GenerationError(
            f"resolution: spacing {grid.spacing} exceeds omega/2 = {omega / 2}"
        )

    xmin, ymin, xmax, ymax = grid.extent
    pts = np.vstack([graph.vertex_array(), *graph.polylines()])
    lo = pts.min(axis=0) - omega
    hi = pts.max(axis=0) + omega
    if lo[0] < xmin + grid.spacing or lo[1] < ymin + grid.spacing or (
        hi[0] > xmax - grid.spacing or hi[1] > ymax - grid.spacing
    ):
        raise GenerationError(
            f"margin: omega-offset of the graph spans [{lo[0]}, {hi[0]}]x[{lo[1]}, {hi[1]}], "
            f"must stay one spacing inside [{xmin}, {xmax}]x[{ymin}, {ymax}]"
        )

    verts = graph.vertex_array()
    for a, b in itertools.combinations(range(len(verts)), 2):
        d = float(np.hypot(*(verts[a] - verts[b])))
        if d <= 2 * omega:
            raise GenerationError(
                f"separation: vertices {a} and {b} are {d} apart, need > 2*omega = {2 * omega}"
            )
    lines = graph.polylines()
    for a, b in itertools.combinations(range(graph.num_edges), 2):
        ea, eb = graph.edges[a], graph.edges[b]
        if {ea.u, ea.v} & {eb.u, eb.v}:
            continue
        d = min(
            segment_segment_distance(lines[a][s], lines[a][s + 1], lines[b][t], lines[b][t + 1])
            for s in range(len(lines[a]) - 1)
            for t in range(len(lines[b]) - 1)
        )
        if d <= 2 * omega:
            raise GenerationError(
                f"separation: nonadjacent edges {a} and {b} are {d} apart, "
                f"need > 2*omega = {2 * omega}"
            )


def _noise(mode: str, params: NoiseParams, grid: GridSpec, seed: int) -> NDArray[np.float64]:
    n = grid.nx * grid.ny
    if mode == NOISE_MODE_UNIFORM:
        rng = np.random.default_rng(seed)
        return rng.uniform(0.0, params.nu, size=n)
    if mode == NOISE_MODE_HIGH:
        return np.full(n, params.nu)
    if mode == NOISE_MODE_LOW:
        return np.zeros(n)
    if mode == NOISE_MODE_CHECKER:
        jj, ii = np.divmod(np.arange(n), grid.nx)
        return np.where((ii + jj) % 2 == 0, params.nu, 0.0)
    raise ParameterError(f"Unsupported noise mode: {mode!r} (expected one of {NOISE_MODES})")


def synth_density(
    graph: PlanarGraph,
    params: NoiseParams,
    grid: GridSpec,
    seed: int,
    mode: str = NOISE_MODE_UNIFORM,
) -> DensityField:
    """Sample an (omega, beta1, beta2, nu)-approximation of ``graph`` on ``grid``.

    Each grid vertex gets the level of its region (beta1, beta2 or 0) plus
    noise in [0, nu]. With the default ``uniform`` mode the noise is drawn
    independently per vertex from a generator seeded by ``seed``; the other
    modes place every pixel at an extreme of its interval.

    Raises
    ------
    GenerationError
        If margin, separation, resolution or the parameter inequality fails.
    """
    check_generation_preconditions(graph, params, grid)
    coords = _grid_coordinates(grid)
    labels = classify_points(graph, params, coords)

    verts = graph.vertex_array()
    for k, v in enumerate(verts):
        if not np.any(np.hypot(coords[:, 0] - v[0], coords[:, 1] - v[1]) <= params.omega):
            raise GenerationError(f"resolution: vertex region {k} contains no grid vertex")

    base = np.select(
        [labels == RegionLabel.VERTEX_REGION, labels == RegionLabel.EDGE_REGION],
        [params.beta1, params.beta2],
        default=0.0,
    )
    values = base + _noise(mode, params, grid, seed)
    logger.info(
        "Synthesized %dx%d density (seed=%d, mode=%s): %d vertex-region, %d edge-region pixels",
        grid.nx, grid.ny, seed, mode,
        int(np.sum(labels == RegionLabel.VERTEX_REGION)),
        int(np.sum(labels == RegionLabel.EDGE_REGION)),
    )
    return DensityField(grid, values)


def _grid_coordinates(grid: GridSpec) -> NDArray[np.float64]:
    jj, ii = np.divmod(np.arange(grid.nx * grid.ny), grid.nx)
    return np.column_stack(
        (grid.origin[0] + grid.spacing * ii, grid.origin[1] + grid.spacing * jj)
    ).astype(np.float64)


# -- ingestion --------------------------------------------------------------------


def _sample_array(points: NDArray[np.float64] | Sequence[Point]) -> NDArray[np.float64]:
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        bad = int(np.flatnonzero(~np.isfinite(pts).all(axis=1))[0])
        raise ParameterError(f"point {bad} has a non-finite coordinate: {tuple(pts[bad])}")
    return pts


def histogram_density(
    points: NDArray[np.float64] | Sequence[Point],
    grid: GridSpec,
) -> tuple[DensityField, int]:
    """Count points at their nearest grid vertex.

    Ties go to the lower index. Points outside the grid rectangle are
    counted at the clamped nearest boundary vertex.

    Returns
    -------
    tuple[DensityField, int]
        The raw-count field and the number of out-of-bounds points.
    """
    grid.validate()
    pts = _sample_array(points)
    counts = np.zeros(grid.nx * grid.ny, dtype=np.float64)
    if len(pts) == 0:
        return DensityField(grid, counts), 0

    tx = (pts[:, 0] - grid.origin[0]) / grid.spacing
    ty = (pts[:, 1] - grid.origin[1]) / grid.spacing
    outside = (tx < 0) | (tx > grid.nx - 1) | (ty < 0) | (ty > grid.ny - 1)
    n_outside = int(np.count_nonzero(outside))
    if n_outside:
        logger.warning("%d point(s) outside the grid rectangle, clamped to the boundary", n_outside)

    # ceil(t - 0.5) rounds half-way cases down, i.e. towards the lower index.
    i = np.clip(np.ceil(tx - 0.5), 0, grid.nx - 1).astype(np.int64)
    j = np.clip(np.ceil(ty - 0.5), 0, grid.ny - 1).astype(np.int64)
    np.add.at(counts, j * grid.nx + i, 1.0)
    return DensityField(grid, counts), n_outside


def kde_density(
    points: NDArray[np.float64] | Sequence[Point],
    grid: GridSpec,
    bandwidth: float,
) -> DensityField:
    """Unnormalised Gaussian KDE on grid vertices, truncated at 4 bandwidths.

    Raises
    ------
    ParameterError
        If ``bandwidth`` is not positive or a point is not finite.
    """
    if not (bandwidth > 0 and math.isfinite(bandwidth)):
        raise ParameterError(f"bandwidth must be > 0, was {bandwidth}")
    grid.validate()
    pts = _sample_array(points)
    image = np.zeros((grid.ny, grid.nx), dtype=np.float64)
    radius = KDE_TRUNCATION_BANDWIDTHS * bandwidth
    r_cells = radius / grid.spacing
    two_h2 = 2.0 * bandwidth * bandwidth

    for x, y in pts:
        tx = (x - grid.origin[0]) / grid.spacing
        ty = (y - grid.origin[1]) / grid.spacing
        i0 = max(int(math.floor(tx - r_cells)), 0)
        i1 = min(int(math.ceil(tx + r_cells)), grid.nx - 1)
        j0 = max(int(math.floor(ty - r_cells)), 0)
        j1 = min(int(math.ceil(ty + r_cells)), grid.ny - 1)
        if i0 > i1 or j0 > j1:
            continue
        gx = grid.origin[0] + grid.spacing * np.arange(i0, i1 + 1) - x
        gy = grid.origin[1] + grid.spacing * np.arange(j0, j1 + 1) - y
        d2 = gy[:, None] ** 2 + gx[None, :] ** 2
        kernel = np.where(d2 <= radius * radius, np.exp(-d2 / two_h2), 0.0)
        image[j0:j1 + 1, i0:i1 + 1] += kernel

    logger.info("KDE over %d point(s), bandwidth=%g", len(pts), bandwidth)
    return DensityField(grid, image.reshape(-1))
