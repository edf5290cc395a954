"""Common utilities for the dmt-graph pipeline: errors, disjoint sets, geometry."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray


class DmtGraphError(Exception):
    """Base class for every error raised by dmt-graph."""


class GridError(DmtGraphError, ValueError):
    """Invalid grid specification."""


class CellError(DmtGraphError, ValueError):
    """Cell does not belong to the complex."""


class GraphError(DmtGraphError, ValueError):
    """Ground-truth graph that is not a simple plane embedding."""


class GenerationError(DmtGraphError, ValueError):
    """Synthetic density preconditions failed."""


class ParameterError(DmtGraphError, ValueError):
    """Invalid numeric parameter (noise model, bandwidth, delta)."""


class FieldSizeError(DmtGraphError, ValueError):
    """Density field does not match the complex it is placed on."""


class OracleSizeError(DmtGraphError, RuntimeError):
    """The brute-force oracle refuses complexes above its size guard."""


class CancellationUsageError(DmtGraphError, ValueError):
    """Morse cancellation called with non-critical cells or wrong dimensions."""


class TraceError(DmtGraphError, RuntimeError):
    """A gradient trace did not terminate (the vector field has a cycle)."""


class PipelineInconsistencyError(DmtGraphError, RuntimeError):
    """A cell selected for extraction was cancelled during simplification."""


class HypothesisError(DmtGraphError, ValueError):
    """Ground truth violates a hypothesis of the reconstruction theorem."""


class EmptySetError(DmtGraphError, ValueError):
    """Distance between point sets is undefined for an empty set."""


class UsageError(DmtGraphError, ValueError):
    """Command-line usage error."""


class ParseError(DmtGraphError, ValueError):
    """Malformed input file.

    Parameters
    ----------
    message : str
        What went wrong.
    path : str | None
        The file being parsed.
    line : int | None
        1-based line number, if known.
    """

    def __init__(self, message: str, path: str | None = None, line: int | None = None) -> None:
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class UnionFind:
    """Disjoint-set forest with path compression and union by rank.

    Elements are the integers ``0 .. n - 1``.
    """

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, element: int) -> int:
        parent = self.parent
        root = element
        while parent[root] != root:
            root = parent[root]
        while parent[element] != root:
            parent[element], element = root, parent[element]
        return root

    def union(self, first: int, second: int) -> bool:
        """Merge the sets of two elements; False if they were already joined."""
        a = self.find(first)
        b = self.find(second)
        if a == b:
            return False
        if self.rank[a] < self.rank[b]:
            a, b = b, a
        self.parent[b] = a
        if self.rank[a] == self.rank[b]:
            self.rank[a] += 1
        return True

    def count_sets(self, elements: list[int] | range | None = None) -> int:
        """Number of distinct sets among ``elements`` (all elements by default)."""
        if elements is None:
            elements = range(len(self.parent))
        return len({self.find(e) for e in elements})


def point_segment_distances(
    points: NDArray[np.float64],
    a: NDArray[np.float64],
    b: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Distances from each row of ``points`` (shape (n, 2)) to segment ``a``-``b``."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.hypot(points[:, 0] - a[0], points[:, 1] - a[1])
    t = np.clip(((points - a) @ ab) / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    diff = points - proj
    return np.hypot(diff[:, 0], diff[:, 1])


def point_polyline_distances(
    points: NDArray[np.float64],
    polyline: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Distances from each point to the nearest point of ``polyline`` (shape (m, 2))."""
    polyline = np.asarray(polyline, dtype=np.float64).reshape(-1, 2)
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if len(polyline) == 1:
        return point_segment_distances(points, polyline[0], polyline[0])
    best = np.full(len(points), np.inf)
    for k in range(len(polyline) - 1):
        np.minimum(best, point_segment_distances(points, polyline[k], polyline[k + 1]), out=best)
    return best


def segment_segment_distance(
    p1: NDArray[np.float64],
    p2: NDArray[np.float64],
    q1: NDArray[np.float64],
    q2: NDArray[np.float64],
) -> float:
    """Minimum distance between two closed segments in the plane."""
    p1, p2, q1, q2 = (np.asarray(v, dtype=np.float64) for v in (p1, p2, q1, q2))

    def orient(a, b, c) -> float:
        return float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return 0.0
    return float(
        min(
            point_segment_distances(q1, p1, p2)[0],
            point_segment_distances(q2, p1, p2)[0],
            point_segment_distances(p1, q1, q2)[0],
            point_segment_distances(p2, q1, q2)[0],
        )
    )


def polyline_length(polyline: NDArray[np.float64]) -> float:
    polyline = np.asarray(polyline, dtype=np.float64).reshape(-1, 2)
    if len(polyline) < 2:
        return 0.0
    return float(np.hypot(*np.diff(polyline, axis=0).T).sum())
