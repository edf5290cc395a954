"""Tests for stable manifolds and graph extraction."""

import logging

import numpy as np
import pytest

from dmt_graph.common import PipelineInconsistencyError
from dmt_graph.complex import Cell, build_complex
from dmt_graph.config import GridSpec
from dmt_graph.density import DensityField, PlanarGraph, synth_density
from dmt_graph.extraction import (
    ReconstructedEdge,
    ReconstructedGraph,
    critical_census,
    extract_graph,
    graph_stats,
    select_edges,
    stable_manifold,
)
from dmt_graph.morse import DiscreteVectorField, init_trivial, simplify
from dmt_graph.persistence import build_filtration, reduce


def _pipeline(field, delta, extract_delta=None):
    k = build_complex(field.grid)
    diagram = reduce(build_filtration(k, field))
    vf = simplify(init_trivial(k), diagram, delta)
    graph = extract_graph(vf, diagram, delta if extract_delta is None else extract_delta)
    return graph, vf, diagram


@pytest.fixture
def ring_with_blob():
    """A ring at 4 around (12, 12) with a single peak of 10 sitting on it."""
    grid = GridSpec(nx=24, ny=24)
    jj, ii = np.divmod(np.arange(576), 24)
    r = np.hypot(ii - 12.0, jj - 12.0)
    values = np.where((r >= 5) & (r <= 7), 4.0, 0.0)
    values[np.hypot(ii - 12.0, jj - 18.0) <= 1.5] = 10.0
    return DensityField(grid, values)


class TestStableManifold:
    """Tests for gradient descent from a critical edge."""

    def test_descends_both_ends(self):
        k = build_complex(GridSpec(nx=4, ny=2))
        field = DiscreteVectorField.from_pairs(k, [
            (Cell.vertex(1, 0), Cell.hedge(0, 0)),
            (Cell.vertex(2, 0), Cell.hedge(2, 0)),
        ])
        manifold = stable_manifold(field, Cell.hedge(1, 0))
        assert manifold.vertices == (0, 1, 2, 3)
        assert (manifold.start, manifold.end) == (0, 3)

    def test_critical_endpoints(self, complex_2x2):
        manifold = stable_manifold(init_trivial(complex_2x2), Cell.vedge(1, 0))
        assert manifold.vertices == (1, 3)

    def test_rejects_paired_edge(self, complex_2x2):
        field = DiscreteVectorField.from_pairs(complex_2x2, [(Cell.vertex(0, 0), Cell.hedge(0, 0))])
        with pytest.raises(PipelineInconsistencyError):
            stable_manifold(field, Cell.hedge(0, 0))


class TestExtractGraph:
    """Tests for graph extraction after simplification."""

    def test_noiseless_cycle(self, rectangle_cycle, noiseless_params, grid_24):
        field = synth_density(rectangle_cycle, noiseless_params, grid_24, seed=0)
        graph, _, _ = _pipeline(field, 3.0)
        stats = graph_stats(graph)
        assert (stats.nodes, stats.edges, stats.b0, stats.b1) == (4, 4, 1, 1)
        truth = rectangle_cycle.vertex_array()
        for node in graph.nodes:
            assert np.min(np.hypot(*(truth - np.asarray(node)).T)) <= noiseless_params.omega

    def test_edges_join_their_nodes(self, rectangle_cycle, noiseless_params, grid_24):
        field = synth_density(rectangle_cycle, noiseless_params, grid_24, seed=0)
        graph, _, _ = _pipeline(field, 3.0)
        for edge in graph.edges:
            assert edge.polyline[0] == graph.nodes[edge.u]
            assert edge.polyline[-1] == graph.nodes[edge.v]
        assert list(graph.node_cells) == sorted(graph.node_cells)

    def test_one_vertex_loop(self, ring_with_blob):
        graph, vf, diagram = _pipeline(ring_with_blob, 2.0)
        assert len(graph.nodes) == 1
        assert len(graph.edges) == 1
        loop = graph.edges[0]
        assert loop.u == loop.v == 0
        assert loop.persistence == 4.0
        assert loop.polyline[0] == loop.polyline[-1] == graph.nodes[0]
        assert graph_stats(graph).b1 == 1
        census = critical_census(vf, diagram, 2.0)
        assert census.critical_vertices == 1
        assert census.critical_edges == 1
        assert census.critical_squares == 1
        assert census.from_square_pairs == 1

    def test_delta_above_everything(self, ring_with_blob, caplog):
        with caplog.at_level(logging.WARNING):
            graph, _, _ = _pipeline(ring_with_blob, 100.0)
        assert graph.is_empty
        assert "reconstruction is empty" in caplog.text

    def test_cancelled_selected_edge(self, ring_with_blob):
        with pytest.raises(PipelineInconsistencyError, match="cancelled"):
            _pipeline(ring_with_blob, 5.0, extract_delta=2.0)


class TestSelectEdges:
    """Tests for choosing edges by persistence."""

    def test_kinds(self, rectangle_cycle, noiseless_params, grid_24):
        field = synth_density(rectangle_cycle, noiseless_params, grid_24, seed=0)
        k = build_complex(grid_24)
        diagram = reduce(build_filtration(k, field))
        kinds = sorted(kind for _, kind in select_edges(diagram, 3.0).values())
        assert kinds == ["square", "vertex", "vertex", "vertex"]
        assert all(k.dim(c) == 1 for c in select_edges(diagram, 3.0))


class TestGraphStats:
    """Tests for Betti numbers and length."""

    def test_path(self):
        graph = PlanarGraph.from_edges([(0.0, 0.0), (3.0, 4.0)], [(0, 1)])
        stats = graph_stats(graph)
        assert (stats.nodes, stats.edges, stats.b0, stats.b1) == (2, 1, 1, 0)
        assert stats.length == pytest.approx(5.0)

    def test_cycle(self, rectangle_cycle):
        stats = graph_stats(rectangle_cycle)
        assert (stats.b0, stats.b1) == (1, 1)
        assert stats.length == pytest.approx(60.0)

    def test_empty_reconstruction(self):
        stats = graph_stats(ReconstructedGraph())
        assert (stats.nodes, stats.edges, stats.b0, stats.b1, stats.length) == (0, 0, 0, 0, 0.0)

    def test_two_components_and_loop(self):
        graph = ReconstructedGraph(
            nodes=((0.0, 0.0), (1.0, 0.0), (5.0, 5.0)),
            edges=(
                ReconstructedEdge(0, 1, ((0.0, 0.0), (1.0, 0.0)), 10, 3.0),
                ReconstructedEdge(2, 2, ((5.0, 5.0), (6.0, 5.0), (6.0, 6.0), (5.0, 5.0)), 11, 2.0),
            ),
            node_cells=(0, 1, 2),
        )
        stats = graph_stats(graph)
        assert (stats.b0, stats.b1) == (2, 1)
        assert stats.length == pytest.approx(3.0 + np.sqrt(2.0))
