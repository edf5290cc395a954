"""Parse graph JSON files into PlanarGraph and ReconstructedGraph objects."""

from __future__ import annotations

import math
from pathlib import Path

import msgspec

from dmt_graph.common import GraphError, ParseError
from dmt_graph.constants import INFINITY_TOKEN
from dmt_graph.density import GraphEdge, PlanarGraph
from dmt_graph.extraction import ReconstructedEdge, ReconstructedGraph

Point = tuple[float, float]


class EdgeRecord(msgspec.Struct, omit_defaults=True):
    """One entry of the ``edges`` array.

    ``persistence`` and ``critical_edge`` are only present in reconstructions.
    """

    u: int
    v: int
    polyline: list[Point] | None = None
    persistence: float | str | None = None
    critical_edge: int | None = None


class GraphRecord(msgspec.Struct, omit_defaults=True):
    vertices: list[Point]
    edges: list[EdgeRecord] = msgspec.field(default_factory=list)
    critical_vertices: list[int] | None = None


_encoder = msgspec.json.Encoder()


def _decode(data: bytes, path: str | None) -> GraphRecord:
    try:
        return msgspec.json.decode(data, type=GraphRecord)
    except msgspec.DecodeError as e:
        raise ParseError(f"invalid graph file: {e}", path=path) from e


def parse_graph(data: bytes, path: str | None = None) -> PlanarGraph:
    """Decode and validate a ground-truth graph.

    Raises
    ------
    ParseError
        If the JSON is malformed or the graph is not a valid embedding.
    """
    record = _decode(data, path)
    graph = PlanarGraph(
        vertices=tuple((float(x), float(y)) for x, y in record.vertices),
        edges=tuple(
            GraphEdge(
                e.u,
                e.v,
                None if e.polyline is None else tuple((float(x), float(y)) for x, y in e.polyline),
            )
            for e in record.edges
        ),
    )
    try:
        graph.validate()
    except GraphError as e:
        raise ParseError(f"invalid graph: {e}", path=path) from e
    return graph


def encode_graph(graph: PlanarGraph) -> bytes:
    record = GraphRecord(
        vertices=list(graph.vertices),
        edges=[
            EdgeRecord(e.u, e.v, None if e.polyline is None else list(e.polyline))
            for e in graph.edges
        ],
    )
    return _encoder.encode(record) + b"\n"


def _parse_persistence(value: float | str | None, k: int, path: str | None) -> float:
    if value is None:
        return math.inf
    if isinstance(value, str):
        if value != INFINITY_TOKEN:
            raise ParseError(f"edge {k}: persistence must be a number or {INFINITY_TOKEN!r}", path=path)
        return math.inf
    return float(value)


def parse_reconstructed_graph(data: bytes, path: str | None = None) -> ReconstructedGraph:
    """Decode a reconstruction written by :func:`encode_reconstructed_graph`.

    Loops (``u == v``) are allowed here, unlike in ground-truth graphs.
    """
    record = _decode(data, path)
    nodes = tuple((float(x), float(y)) for x, y in record.vertices)
    edges = []
    for k, e in enumerate(record.edges):
        if not (0 <= e.u < len(nodes) and 0 <= e.v < len(nodes)):
            raise ParseError(f"edge {k} references a missing node ({e.u}, {e.v})", path=path)
        polyline = (
            (nodes[e.u], nodes[e.v])
            if e.polyline is None
            else tuple((float(x), float(y)) for x, y in e.polyline)
        )
        edges.append(
            ReconstructedEdge(
                u=e.u,
                v=e.v,
                polyline=polyline,
                critical_edge=-1 if e.critical_edge is None else e.critical_edge,
                persistence=_parse_persistence(e.persistence, k, path),
            )
        )
    node_cells = tuple(record.critical_vertices) if record.critical_vertices else ()
    return ReconstructedGraph(nodes=nodes, edges=tuple(edges), node_cells=node_cells)


def encode_reconstructed_graph(graph: ReconstructedGraph) -> bytes:
    """Graph JSON with per-edge ``persistence`` and ``critical_edge`` extras."""
    record = GraphRecord(
        vertices=list(graph.nodes),
        edges=[
            EdgeRecord(
                e.u,
                e.v,
                list(e.polyline),
                persistence=INFINITY_TOKEN if math.isinf(e.persistence) else e.persistence,
                critical_edge=e.critical_edge,
            )
            for e in graph.edges
        ],
        critical_vertices=list(graph.node_cells) if graph.node_cells else None,
    )
    return _encoder.encode(record) + b"\n"


def read_graph(path: str | Path) -> PlanarGraph:
    path = Path(path)
    return parse_graph(path.read_bytes(), path=str(path))


def write_graph(graph: PlanarGraph, path: str | Path) -> None:
    Path(path).write_bytes(encode_graph(graph))


def read_reconstructed_graph(path: str | Path) -> ReconstructedGraph:
    path = Path(path)
    return parse_reconstructed_graph(path.read_bytes(), path=str(path))


def write_reconstructed_graph(graph: ReconstructedGraph, path: str | Path) -> None:
    Path(path).write_bytes(encode_reconstructed_graph(graph))
