"""Reconstruction guarantees on the benchmark families."""

import msgspec
import numpy as np
import pytest

from dmt_graph.density import RegionLabel, classify_points
from dmt_graph.extraction import graph_stats
from dmt_graph.families import BENCHMARK_GRID, FAMILIES, benchmark_params
from dmt_graph.verify import match_nodes

# Seeds whose reconstruction has the right topology but whose Hausdorff
# distance misses the resolution/2 margin below omega. Kept as saved fixtures.
HAUSDORFF_COUNTEREXAMPLES = {
    "theta": {5},
}


@pytest.mark.parametrize("name", sorted(FAMILIES))
class TestFamilyRuns:
    """Every seed of every family must reproduce the ground truth."""

    def test_topology(self, family_trials, name):
        for trial in family_trials[name]:
            report = trial.report
            assert report.b0_recon == 1, f"seed {trial.seed}"
            assert report.b1_recon == report.b1_truth, f"seed {trial.seed}"

    def test_hausdorff(self, family_trials, name):
        omega = benchmark_params().omega
        known = HAUSDORFF_COUNTEREXAMPLES.get(name, set())
        for trial in family_trials[name]:
            report = trial.report
            assert report.hausdorff is not None
            if trial.seed in known:
                continue
            assert report.hausdorff + report.resolution / 2 < omega, f"seed {trial.seed}"
            assert report.passed, f"seed {trial.seed}: {report.failures}"

    def test_known_counterexamples(self, family_trials, counterexample_dir, name):
        known = HAUSDORFF_COUNTEREXAMPLES.get(name, set())
        failing = {trial.seed for trial in family_trials[name] if not trial.report.passed}
        assert failing == known
        for trial in family_trials[name]:
            if trial.seed not in known:
                continue
            report = trial.report
            assert len(report.failures) == 1
            assert report.failures[0].startswith("Hausdorff violation")
            saved = counterexample_dir / name / f"seed-{trial.seed}"
            record = msgspec.json.decode((saved / "failure.json").read_bytes())
            assert record["seed"] == trial.seed
            assert record["report"]["pass"] is False
            assert (saved / "density.dgrid").exists()

    def test_every_vertex_recovered(self, family_trials, name):
        omega = benchmark_params().omega
        for trial in family_trials[name]:
            matches = match_nodes(trial.truth, trial.reconstruction.graph)
            assert sorted(m.vertex for m in matches) == list(range(trial.truth.num_vertices))
            assert all(m.distance < omega for m in matches)

    def test_critical_census(self, family_trials, name):
        for trial in family_trials[name]:
            census = trial.reconstruction.census
            truth = graph_stats(trial.truth)
            assert census.critical_vertices == truth.nodes
            assert census.selected_edges == truth.edges
            assert census.from_square_pairs == truth.b1
            assert census.from_vertex_pairs == truth.nodes - 1
            assert census.from_essential == 0

    def test_vector_field_sound(self, family_trials, name):
        for trial in family_trials[name]:
            field = trial.reconstruction.vector_field
            assert field.check_matching() == []
            assert field.is_acyclic()

    def test_polylines_are_simple_grid_paths(self, family_trials, name):
        for trial in family_trials[name]:
            for edge in trial.reconstruction.graph.edges:
                line = np.asarray(edge.polyline, dtype=np.float64)
                steps = np.abs(np.diff(line, axis=0))
                assert np.allclose(steps.sum(axis=1), BENCHMARK_GRID.spacing), f"seed {trial.seed}"
                assert np.allclose(steps.min(axis=1), 0.0), f"seed {trial.seed}"
                points = [tuple(p) for p in edge.polyline]
                if edge.u == edge.v:
                    points = points[:-1]
                assert len(set(points)) == len(points), f"seed {trial.seed}"

    def test_polylines_inside_offset(self, family_trials, name):
        for trial in family_trials[name]:
            for edge in trial.reconstruction.graph.edges:
                labels = classify_points(trial.truth, trial.params, np.asarray(edge.polyline))
                assert np.all(labels != RegionLabel.OUTSIDE), f"seed {trial.seed}"
