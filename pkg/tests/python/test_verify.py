"""Tests for Hausdorff distance and reconstruction checks."""

import msgspec
import numpy as np
import pytest

from dmt_graph.common import EmptySetError, HypothesisError, ParameterError
from dmt_graph.density import PlanarGraph
from dmt_graph.extraction import ReconstructedEdge, ReconstructedGraph
from dmt_graph.verify import check_theorem, hausdorff_distance, match_nodes, sample_polylines


def _recon_from(graph: PlanarGraph, shift=(0.0, 0.0), keep=None) -> ReconstructedGraph:
    dx, dy = shift
    nodes = tuple((float(x + dx), float(y + dy)) for x, y in graph.vertices)
    edges = tuple(
        ReconstructedEdge(e.u, e.v, (nodes[e.u], nodes[e.v]), critical_edge=k, persistence=5.0)
        for k, e in enumerate(graph.edges)
        if keep is None or k in keep
    )
    return ReconstructedGraph(nodes=nodes, edges=edges, node_cells=tuple(range(len(nodes))))


class TestSamplePolylines:
    """Tests for arc-length sampling."""

    def test_step_bound(self):
        pts = sample_polylines([[(0.0, 0.0), (1.0, 0.0)]], 0.25)
        assert len(pts) == 5
        assert np.allclose(pts[:, 0], [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_single_point(self):
        pts = sample_polylines([np.array([[2.0, 3.0]])], 0.1)
        assert pts.tolist() == [[2.0, 3.0]]

    def test_empty(self):
        assert sample_polylines([], 0.5).shape == (0, 2)


class TestHausdorffDistance:
    """Tests for the sampled Hausdorff distance."""

    def test_parallel_segments(self):
        a = [[(0.0, 0.0), (1.0, 0.0)]]
        b = [[(0.0, 1.0), (1.0, 1.0)]]
        assert hausdorff_distance(a, b, 0.1) == pytest.approx(1.0)

    def test_point_and_segment(self):
        assert hausdorff_distance([[(0.0, 0.0)]], [[(0.0, 0.0), (2.0, 0.0)]], 0.5) == pytest.approx(2.0)

    def test_identical(self):
        line = [[(0.0, 0.0), (3.0, 1.0), (4.0, 5.0)]]
        assert hausdorff_distance(line, line, 0.3) == 0.0

    def test_symmetric_and_triangle(self):
        rng = np.random.default_rng(3)
        sets = [[rng.uniform(0, 10, size=(4, 2))] for _ in range(3)]
        a, b, c = sets
        ab = hausdorff_distance(a, b, 0.2)
        assert ab == pytest.approx(hausdorff_distance(b, a, 0.2))
        assert hausdorff_distance(a, c, 0.2) <= ab + hausdorff_distance(b, c, 0.2) + 1e-9

    def test_empty_set(self):
        with pytest.raises(EmptySetError):
            hausdorff_distance([], [[(0.0, 0.0)]], 0.5)

    def test_bad_resolution(self):
        with pytest.raises(ParameterError):
            hausdorff_distance([[(0.0, 0.0)]], [[(1.0, 0.0)]], 0.0)


class TestCheckTheorem:
    """Tests for the pass/fail report."""

    def test_exact_reconstruction_passes(self, rectangle_cycle):
        report = check_theorem(rectangle_cycle, _recon_from(rectangle_cycle), omega=2.0, resolution=0.5)
        assert report.passed
        assert report.hausdorff == 0.0
        assert (report.b0_truth, report.b1_truth, report.b0_recon, report.b1_recon) == (1, 1, 1, 1)
        assert report.failures == []

    def test_missing_loop_fails(self, rectangle_cycle):
        recon = _recon_from(rectangle_cycle, keep={0, 1, 2})
        report = check_theorem(rectangle_cycle, recon, omega=2.0, resolution=0.5)
        assert not report.passed
        assert report.b1_recon == 0
        assert any("b1 mismatch" in reason for reason in report.failures)

    def test_shift_near_omega_fails(self, rectangle_cycle):
        recon = _recon_from(rectangle_cycle, shift=(1.9, 0.0))
        report = check_theorem(rectangle_cycle, recon, omega=2.0, resolution=0.5)
        assert report.hausdorff == pytest.approx(1.9)
        assert not report.passed
        assert any("Hausdorff" in reason for reason in report.failures)

    def test_small_shift_passes(self, rectangle_cycle):
        recon = _recon_from(rectangle_cycle, shift=(0.5, 0.5))
        report = check_theorem(rectangle_cycle, recon, omega=2.0, resolution=0.5)
        assert report.passed

    def test_empty_reconstruction(self, rectangle_cycle):
        report = check_theorem(rectangle_cycle, ReconstructedGraph(), omega=2.0, resolution=0.5)
        assert report.hausdorff is None
        assert not report.passed
        assert report.b0_recon == 0

    def test_disconnected_truth(self):
        truth = PlanarGraph.from_edges(
            [(0.0, 0.0), (1.0, 0.0), (5.0, 5.0), (6.0, 5.0)], [(0, 1), (2, 3)]
        )
        with pytest.raises(HypothesisError):
            check_theorem(truth, ReconstructedGraph(), omega=1.0, resolution=0.5)

    def test_serialized_pass_field(self, rectangle_cycle):
        report = check_theorem(rectangle_cycle, _recon_from(rectangle_cycle), omega=2.0, resolution=0.5)
        data = msgspec.json.decode(msgspec.json.encode(report))
        assert data["pass"] is True
        assert "passed" not in data
        assert len(data["node_match"]) == 4


class TestMatchNodes:
    """Tests for node-to-vertex matching."""

    def test_nearest_vertex(self, rectangle_cycle):
        matches = match_nodes(rectangle_cycle, _recon_from(rectangle_cycle, shift=(0.3, -0.4)))
        assert [m.vertex for m in matches] == [0, 1, 2, 3]
        assert all(m.distance == pytest.approx(0.5) for m in matches)

    def test_empty(self, rectangle_cycle):
        assert match_nodes(rectangle_cycle, ReconstructedGraph()) == []
