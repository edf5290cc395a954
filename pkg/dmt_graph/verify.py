"""Check a reconstruction against its ground truth: topology and Hausdorff distance."""

from __future__ import annotations

import logging
import math
from typing import Sequence

import msgspec
import numpy as np
from numpy.typing import NDArray
from scipy.spatial import cKDTree

from dmt_graph.common import EmptySetError, HypothesisError, ParameterError
from dmt_graph.density import PlanarGraph
from dmt_graph.extraction import ReconstructedGraph, graph_stats

logger = logging.getLogger(__name__)


class NodeMatch(msgspec.Struct, frozen=True):
    """Nearest ground-truth vertex of one reconstructed node."""

    vertex: int
    node: int
    distance: float


class TheoremReport(msgspec.Struct, frozen=True):
    """Outcome of comparing a reconstruction with its ground truth.

    Parameters
    ----------
    b0_truth, b1_truth, b0_recon, b1_recon : int
        Betti numbers of both graphs.
    hausdorff : float | None
        Sampled Hausdorff distance, None when the reconstruction is empty.
    resolution : float
        Sampling step used for ``hausdorff``.
    omega : float
        Tube radius the distance is compared against.
    node_match : list[NodeMatch]
    passed : bool
        Serialized as ``pass``.
    """

    b0_truth: int
    b1_truth: int
    b0_recon: int
    b1_recon: int
    hausdorff: float | None
    resolution: float
    omega: float
    node_match: list[NodeMatch]
    passed: bool = msgspec.field(name="pass")

    @property
    def failures(self) -> list[str]:
        """Human-readable reasons for ``passed`` being False."""
        reasons = []
        if self.b0_recon != 1:
            reasons.append(f"reconstruction has b0={self.b0_recon}, expected 1")
        if self.b1_recon != self.b1_truth:
            reasons.append(f"b1 mismatch: truth {self.b1_truth}, reconstruction {self.b1_recon}")
        if self.hausdorff is None:
            reasons.append("reconstruction is empty")
        elif not self.hausdorff + self.resolution / 2 < self.omega:
            reasons.append(
                f"Hausdorff violation: {self.hausdorff:.6g} + {self.resolution / 2:.6g} "
                f">= omega {self.omega:.6g}"
            )
        return reasons


def sample_polylines(
    polylines: Sequence[NDArray[np.float64] | Sequence[tuple[float, float]]],
    resolution: float,
) -> NDArray[np.float64]:
    """Points along every polyline at arc-length steps <= ``resolution``.

    Segment endpoints are always included.
    """
    chunks = []
    for line in polylines:
        pts = np.asarray(line, dtype=np.float64).reshape(-1, 2)
        if len(pts) == 0:
            continue
        chunks.append(pts[:1])
        for a, b in zip(pts[:-1], pts[1:]):
            length = float(np.hypot(*(b - a)))
            steps = max(1, math.ceil(length / resolution))
            t = np.arange(1, steps + 1, dtype=np.float64) / steps
            chunks.append(a + t[:, None] * (b - a))
    if not chunks:
        return np.empty((0, 2), dtype=np.float64)
    return np.vstack(chunks)


def hausdorff_distance(
    first: Sequence[NDArray[np.float64] | Sequence[tuple[float, float]]],
    second: Sequence[NDArray[np.float64] | Sequence[tuple[float, float]]],
    resolution: float,
) -> float:
    """Symmetric Hausdorff distance between two sampled polyline sets.

    Overestimates the exact value by at most ``resolution / 2``.

    Raises
    ------
    EmptySetError
        If either set has no points.
    """
    if not resolution > 0:
        raise ParameterError(f"resolution must be > 0, was {resolution}")
    a = sample_polylines(first, resolution)
    b = sample_polylines(second, resolution)
    if len(a) == 0 or len(b) == 0:
        raise EmptySetError("Hausdorff distance is undefined for an empty point set")
    d_ab, _ = cKDTree(b).query(a)
    d_ba, _ = cKDTree(a).query(b)
    return float(max(d_ab.max(), d_ba.max()))


def _truth_polylines(graph: PlanarGraph) -> list[NDArray[np.float64]]:
    return graph.polylines() + [v[None, :] for v in graph.vertex_array()]


def _recon_polylines(graph: ReconstructedGraph) -> list[NDArray[np.float64]]:
    lines = [np.asarray(e.polyline, dtype=np.float64) for e in graph.edges]
    return lines + [np.asarray([p], dtype=np.float64) for p in graph.nodes]


def match_nodes(truth: PlanarGraph, recon: ReconstructedGraph) -> list[NodeMatch]:
    """Nearest ground-truth vertex for each reconstructed node."""
    if not recon.nodes or truth.num_vertices == 0:
        return []
    dist, idx = cKDTree(truth.vertex_array()).query(np.asarray(recon.nodes, dtype=np.float64))
    return [
        NodeMatch(vertex=int(i), node=k, distance=float(d))
        for k, (d, i) in enumerate(zip(dist, idx))
    ]


def check_theorem(
    truth: PlanarGraph,
    recon: ReconstructedGraph,
    omega: float,
    resolution: float,
) -> TheoremReport:
    """Compare Betti numbers and Hausdorff distance of ``recon`` against ``truth``.

    Passes when both graphs are connected, their first Betti numbers agree
    and ``hausdorff + resolution / 2 < omega``.

    Raises
    ------
    HypothesisError
        If ``truth`` is empty or disconnected.
    """
    if not omega > 0:
        raise ParameterError(f"omega must be > 0, was {omega}")
    truth_stats = graph_stats(truth)
    if truth_stats.b0 != 1:
        raise HypothesisError(f"ground truth must be connected, has b0={truth_stats.b0}")
    recon_stats = graph_stats(recon)

    hausdorff = None
    if recon.nodes:
        hausdorff = hausdorff_distance(_truth_polylines(truth), _recon_polylines(recon), resolution)

    passed = (
        recon_stats.b0 == 1
        and recon_stats.b1 == truth_stats.b1
        and hausdorff is not None
        and hausdorff + resolution / 2 < omega
    )
    report = TheoremReport(
        b0_truth=truth_stats.b0,
        b1_truth=truth_stats.b1,
        b0_recon=recon_stats.b0,
        b1_recon=recon_stats.b1,
        hausdorff=hausdorff,
        resolution=resolution,
        omega=omega,
        node_match=match_nodes(truth, recon),
        passed=passed,
    )
    if passed:
        logger.info("Reconstruction verified (hausdorff=%s, omega=%g)", hausdorff, omega)
    else:
        logger.warning("Reconstruction failed verification: %s", "; ".join(report.failures))
    return report
