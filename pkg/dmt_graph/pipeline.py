"""End-to-end reconstruction: density -> persistence -> simplification -> graph."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from pathlib import Path

import msgspec

from dmt_graph.common import ParameterError, PipelineInconsistencyError
from dmt_graph.complex import CubicalComplex, build_complex
from dmt_graph.config import GridSpec, NoiseParams, ReconstructConfig
from dmt_graph.constants import (
    DEFAULT_RESOLUTION_PER_SPACING,
    NOISE_MODE_UNIFORM,
    ORACLE_MAX_CELLS,
)
from dmt_graph.density import DensityField, PlanarGraph, delta_range, synth_density
from dmt_graph.extraction import CriticalCensus, ReconstructedGraph, critical_census, extract_graph
from dmt_graph.morse import DiscreteVectorField, init_trivial, simplify
from dmt_graph.parsing.fields import write_dgrid
from dmt_graph.parsing.graphs import write_graph, write_reconstructed_graph
from dmt_graph.persistence import (
    Filtration,
    PersistenceDiagram,
    build_filtration,
    oracle_reduce,
    reduce,
)
from dmt_graph.verify import TheoremReport, check_theorem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reconstruction:
    complex: CubicalComplex
    filtration: Filtration
    diagram: PersistenceDiagram
    vector_field: DiscreteVectorField
    graph: ReconstructedGraph
    census: CriticalCensus
    elapsed: float


def check_delta(delta: float, params: NoiseParams) -> None:
    """Reject a cut-off outside the open interval allowed by ``params``."""
    lo, hi = delta_range(params)
    if not lo < delta < hi:
        raise ParameterError(
            f"delta={delta} outside the valid range ({lo:g}, {hi:g}) for "
            f"beta1={params.beta1}, beta2={params.beta2}, nu={params.nu}"
        )


def reconstruct(field: DensityField, config: ReconstructConfig) -> Reconstruction:
    """Run the whole reconstruction on one density field.

    Raises
    ------
    PipelineInconsistencyError
        If a requested cross-check fails.
    """
    config.validate()
    started = time.perf_counter()
    complex_ = build_complex(field.grid)
    filtration = build_filtration(complex_, field)
    diagram = reduce(filtration)

    if config.cross_check:
        if complex_.size > ORACLE_MAX_CELLS:
            logger.warning("Skipping oracle cross-check: %d cells exceed %d", complex_.size, ORACLE_MAX_CELLS)
        elif oracle_reduce(filtration) != diagram:
            raise PipelineInconsistencyError("reduce disagrees with the column-reduction oracle")

    vector_field = simplify(init_trivial(complex_), diagram, config.delta)
    if config.check_field:
        problems = vector_field.check_matching()
        if problems:
            raise PipelineInconsistencyError(f"invalid matching: {problems[0]}")
        if not vector_field.is_acyclic():
            raise PipelineInconsistencyError("simplified vector field has a closed V-path")

    graph = extract_graph(vector_field, diagram, config.delta)
    census = critical_census(vector_field, diagram, config.delta)
    elapsed = time.perf_counter() - started
    logger.info("Reconstruction of %dx%d field took %.3fs", complex_.nx, complex_.ny, elapsed)
    return Reconstruction(complex_, filtration, diagram, vector_field, graph, census, elapsed)


def default_resolution(grid: GridSpec) -> float:
    return grid.spacing * DEFAULT_RESOLUTION_PER_SPACING


@dataclass(frozen=True)
class Trial:
    """One synthesize-reconstruct-verify run."""

    truth: PlanarGraph
    params: NoiseParams
    grid: GridSpec
    seed: int
    delta: float
    field: DensityField
    reconstruction: Reconstruction
    report: TheoremReport


def run_trial(
    truth: PlanarGraph,
    params: NoiseParams,
    grid: GridSpec,
    seed: int,
    delta: float,
    resolution: float | None = None,
    noise_mode: str = NOISE_MODE_UNIFORM,
    check_field: bool = False,
) -> Trial:
    check_delta(delta, params)
    field = synth_density(truth, params, grid, seed, mode=noise_mode)
    recon = reconstruct(field, ReconstructConfig(delta=delta, check_field=check_field))
    resolution = default_resolution(grid) if resolution is None else resolution
    report = check_theorem(truth, recon.graph, params.omega, resolution)
    return Trial(truth, params, grid, seed, delta, field, recon, report)


class FailureRecord(msgspec.Struct):
    seed: int
    delta: float
    grid: GridSpec
    params: NoiseParams
    census: CriticalCensus
    report: TheoremReport


def save_failure(trial: Trial, directory: str | Path) -> Path:
    """Write the seed, ground truth, density and reconstruction of a failed run."""
    out = Path(directory) / f"seed-{trial.seed}"
    out.mkdir(parents=True, exist_ok=True)
    write_graph(trial.truth, out / "truth.json")
    write_dgrid(trial.field, out / "density.dgrid")
    write_reconstructed_graph(trial.reconstruction.graph, out / "recon.json")
    record = FailureRecord(
        seed=trial.seed,
        delta=trial.delta,
        grid=trial.grid,
        params=trial.params,
        census=trial.reconstruction.census,
        report=trial.report,
    )
    (out / "failure.json").write_bytes(msgspec.json.encode(record) + b"\n")
    logger.warning("Saved failing run to %s", out)
    return out
