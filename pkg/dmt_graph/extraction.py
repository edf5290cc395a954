"""Extract the reconstructed graph from high-persistence critical edges."""

from __future__ import annotations

import logging
import math

import msgspec

from dmt_graph.common import (
    PipelineInconsistencyError,
    TraceError,
    UnionFind,
    polyline_length,
)
from dmt_graph.complex import Cell
from dmt_graph.constants import CRITICAL, DIM_EDGE, DIM_SQUARE, DIM_VERTEX
from dmt_graph.density import PlanarGraph
from dmt_graph.morse import DiscreteVectorField
from dmt_graph.persistence import PersistenceDiagram

logger = logging.getLogger(__name__)

Point = tuple[float, float]


class ReconstructedEdge(msgspec.Struct, frozen=True):
    """One stable manifold: a grid path between two nodes.

    Parameters
    ----------
    u, v : int
        Node indices of the endpoints (equal for a loop).
    polyline : tuple[Point, ...]
        World coordinates of the grid vertices along the path.
    critical_edge : int
        Dense index of the critical edge that generated the path.
    persistence : float
        Persistence of that edge's pair (``math.inf`` if essential).
    """

    u: int
    v: int
    polyline: tuple[Point, ...]
    critical_edge: int
    persistence: float


class ReconstructedGraph(msgspec.Struct, frozen=True):
    """The reconstruction: critical vertices joined by stable manifolds.

    ``node_cells`` holds the dense index of each node's critical vertex, in
    the same order as ``nodes``.
    """

    nodes: tuple[Point, ...] = ()
    edges: tuple[ReconstructedEdge, ...] = ()
    node_cells: tuple[int, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.edges and not self.nodes


class StableManifold(msgspec.Struct, frozen=True):
    """Grid-vertex path of a critical edge; ``vertices`` runs from ``start`` to ``end``."""

    edge: int
    vertices: tuple[int, ...]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]


class GraphStats(msgspec.Struct, frozen=True):
    nodes: int
    edges: int
    b0: int
    b1: int
    length: float


class CriticalCensus(msgspec.Struct, frozen=True):
    """Critical cells left by simplification and where the selected edges came from."""

    critical_vertices: int
    critical_edges: int
    critical_squares: int
    selected_edges: int
    from_vertex_pairs: int
    from_square_pairs: int
    from_essential: int


def _descend(field: DiscreteVectorField, vertex: int) -> list[int]:
    complex_ = field.complex
    trace = [vertex]
    w = vertex
    for _ in range(complex_.size):
        e = field.partner[w]
        if e == CRITICAL:
            return trace
        w = complex_.other_endpoint(e, w)
        trace.append(w)
    raise TraceError(
        f"trace from vertex {complex_.cell(vertex)} exceeded {complex_.size} steps; "
        "the vector field has a closed V-path"
    )


def stable_manifold_indices(field: DiscreteVectorField, edge: int) -> StableManifold:
    """Index form of :func:`stable_manifold`."""
    complex_ = field.complex
    if complex_.dim(edge) != DIM_EDGE or not field.is_critical(edge):
        raise PipelineInconsistencyError(f"{complex_.cell(edge)} is not a critical edge")
    a, b = complex_.face_indices(edge)
    trace_a = _descend(field, a)
    trace_b = _descend(field, b)
    return StableManifold(edge, tuple(reversed(trace_a)) + tuple(trace_b))


def stable_manifold(field: DiscreteVectorField, edge: Cell) -> StableManifold:
    """Follow the gradient down from both endpoints of a critical edge.

    Each endpoint is traced through its vertex pairing until a critical
    vertex is reached; the two traces joined through ``edge`` form the
    returned path.

    Raises
    ------
    TraceError
        If a trace runs longer than the cell count.
    """
    return stable_manifold_indices(field, field.complex.index(edge))


def select_edges(diagram: PersistenceDiagram, delta: float) -> dict[int, tuple[float, str]]:
    """Edge cells selected for extraction, with persistence and pair kind.

    Kinds are ``"vertex"`` (death of a vertex/edge pair), ``"square"``
    (birth of an edge/square pair) and ``"essential"`` (an unpaired edge).
    """
    selected: dict[int, tuple[float, str]] = {}
    for p in diagram.select(delta):
        if p.dim == DIM_VERTEX and p.death is not None:
            selected[p.death] = (p.persistence, "vertex")
        elif p.dim == DIM_EDGE:
            selected[p.birth] = (p.persistence, "essential" if p.death is None else "square")
    return selected


def extract_graph(
    field: DiscreteVectorField,
    diagram: PersistenceDiagram,
    delta: float,
) -> ReconstructedGraph:
    """Union of the stable manifolds of every edge whose pair has persistence >= delta.

    Raises
    ------
    PipelineInconsistencyError
        If a selected edge is not critical in ``field``.
    """
    complex_ = field.complex
    selected = select_edges(diagram, delta)
    manifolds = []
    for edge in sorted(selected):
        if not field.is_critical(edge):
            raise PipelineInconsistencyError(
                f"selected edge {complex_.cell(edge)} (persistence {selected[edge][0]}) "
                "was cancelled during simplification"
            )
        manifolds.append(stable_manifold_indices(field, edge))

    node_cells = sorted({m.start for m in manifolds} | {m.end for m in manifolds})
    node_of = {c: k for k, c in enumerate(node_cells)}
    edges = tuple(
        ReconstructedEdge(
            u=node_of[m.start],
            v=node_of[m.end],
            polyline=tuple(complex_.world(w) for w in m.vertices),
            critical_edge=m.edge,
            persistence=selected[m.edge][0],
        )
        for m in manifolds
    )
    graph = ReconstructedGraph(
        nodes=tuple(complex_.world(c) for c in node_cells),
        edges=edges,
        node_cells=tuple(node_cells),
    )
    if not edges:
        logger.warning("No edge has persistence >= %g; reconstruction is empty", delta)
    else:
        logger.info("Extracted %d node(s), %d edge(s)", len(node_cells), len(edges))
    return graph


def graph_stats(graph: ReconstructedGraph | PlanarGraph) -> GraphStats:
    """Node and edge counts, Betti numbers and total length of a graph."""
    if isinstance(graph, PlanarGraph):
        n = graph.num_vertices
        ends = [(e.u, e.v) for e in graph.edges]
        lines = graph.polylines()
    else:
        n = len(graph.nodes)
        ends = [(e.u, e.v) for e in graph.edges]
        lines = [e.polyline for e in graph.edges]
    uf = UnionFind(n)
    for u, v in ends:
        uf.union(u, v)
    b0 = uf.count_sets() if n else 0
    return GraphStats(
        nodes=n,
        edges=len(ends),
        b0=b0,
        b1=len(ends) - n + b0,
        length=math.fsum(polyline_length(line) for line in lines),
    )


def critical_census(
    field: DiscreteVectorField,
    diagram: PersistenceDiagram,
    delta: float,
) -> CriticalCensus:
    complex_ = field.complex
    counts = [0, 0, 0]
    for c in field.critical_indices():
        counts[complex_.dim(c)] += 1
    kinds = [kind for _, kind in select_edges(diagram, delta).values()]
    return CriticalCensus(
        critical_vertices=counts[DIM_VERTEX],
        critical_edges=counts[DIM_EDGE],
        critical_squares=counts[DIM_SQUARE],
        selected_edges=len(kinds),
        from_vertex_pairs=kinds.count("vertex"),
        from_square_pairs=kinds.count("square"),
        from_essential=kinds.count("essential"),
    )
