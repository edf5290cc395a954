"""Pytest configuration for dmt-graph integration tests."""

import sys
from pathlib import Path

import pytest

# Add the project root to sys.path so dmt_graph can be imported
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from dmt_graph.density import delta_range  # noqa: E402
from dmt_graph.families import BENCHMARK_GRID, FAMILIES, benchmark_params, family_graph  # noqa: E402
from dmt_graph.pipeline import run_trial, save_failure  # noqa: E402

SEEDS = range(20)


@pytest.fixture(scope="session")
def counterexample_dir(tmp_path_factory):
    """Where failing runs are written, one subdirectory per family."""
    return tmp_path_factory.mktemp("counterexamples")


@pytest.fixture(scope="session")
def family_trials(counterexample_dir):
    """Twenty benchmark runs per family, computed once per session.

    Every run that fails verification is saved under ``counterexample_dir``.
    """
    params = benchmark_params()
    lo, hi = delta_range(params)
    delta = (lo + hi) / 2
    trials = {
        name: [
            run_trial(family_graph(name), params, BENCHMARK_GRID, seed, delta, check_field=True)
            for seed in SEEDS
        ]
        for name in FAMILIES
    }
    for name, runs in trials.items():
        for trial in runs:
            if not trial.report.passed:
                save_failure(trial, counterexample_dir / name)
    return trials
