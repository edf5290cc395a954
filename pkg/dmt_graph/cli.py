"""Command-line entry point: ``dmt-graph <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

import msgspec

from dmt_graph.common import DmtGraphError, UsageError
from dmt_graph.config import ReconstructConfig, RunConfig, load_run_config
from dmt_graph.constants import (
    DEFAULT_RESOLUTION_PER_SPACING,
    EXIT_ERROR,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    NOISE_MODES,
)
from dmt_graph.density import (
    PlanarGraph,
    delta_range,
    histogram_density,
    kde_density,
    synth_density,
)
from dmt_graph.families import FAMILIES, family_graph
from dmt_graph.parsing.diagrams import write_diagram_csv
from dmt_graph.parsing.fields import read_dgrid, write_dgrid
from dmt_graph.parsing.graphs import (
    read_graph,
    read_reconstructed_graph,
    write_reconstructed_graph,
)
from dmt_graph.parsing.points import read_points
from dmt_graph.pipeline import check_delta, reconstruct, run_trial, save_failure
from dmt_graph.render import write_svg
from dmt_graph.verify import TheoremReport, check_theorem

logger = logging.getLogger(__name__)


def _require(config: RunConfig, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(config, n) is None]
    if missing:
        raise UsageError(f"missing required argument(s): {', '.join(missing)}")


def _emit_report(report: TheoremReport, out: str | None) -> int:
    data = msgspec.json.encode(report) + b"\n"
    if out is None:
        sys.stdout.write(data.decode())
    else:
        Path(out).write_bytes(data)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _truth(config: RunConfig) -> PlanarGraph:
    if config.graph is not None:
        return read_graph(config.graph)
    if config.family is not None:
        return family_graph(config.family)
    raise UsageError("one of --graph or --family is required")


def cmd_synth(config: RunConfig, print_range: bool = False) -> int:
    _require(config, "omega")
    params = config.noise_params()
    if print_range:
        lo, hi = delta_range(params)
        sys.stdout.write(f"{lo:g} {hi:g} {(lo + hi) / 2:g}\n")
        if config.out is None:
            return EXIT_OK
    _require(config, "out")
    if config.delta is not None:
        check_delta(config.delta, params)
    field = synth_density(
        _truth(config), params, config.grid(), config.seed, mode=config.noise_mode
    )
    write_dgrid(field, config.out)
    return EXIT_OK


def cmd_hist(config: RunConfig) -> int:
    _require(config, "points", "out")
    field, n_outside = histogram_density(read_points(config.points), config.grid())
    if n_outside:
        logger.warning("%d point(s) fell outside the grid", n_outside)
    write_dgrid(field, config.out)
    return EXIT_OK


def cmd_kde(config: RunConfig) -> int:
    _require(config, "points", "out", "bandwidth")
    field = kde_density(read_points(config.points), config.grid(), config.bandwidth)
    write_dgrid(field, config.out)
    return EXIT_OK


def cmd_reconstruct(config: RunConfig, cross_check: bool = False) -> int:
    _require(config, "density", "delta", "out")
    params = config.threshold_params()
    if params is not None:
        check_delta(config.delta, params)
    field = read_dgrid(config.density)
    result = reconstruct(field, ReconstructConfig(delta=config.delta, cross_check=cross_check))
    write_reconstructed_graph(result.graph, config.out)
    if config.diagram is not None:
        write_diagram_csv(result.diagram, config.diagram)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    _require(config, "truth", "recon", "omega")
    resolution = config.resolution
    if resolution is None:
        resolution = config.spacing * DEFAULT_RESOLUTION_PER_SPACING
    report = check_theorem(
        read_graph(config.truth), read_reconstructed_graph(config.recon), config.omega, resolution
    )
    return _emit_report(report, config.out)


def cmd_render(config: RunConfig) -> int:
    _require(config, "out")
    if config.density is None and config.truth is None and config.recon is None:
        raise UsageError("render needs at least one of --density, --truth, --recon")
    write_svg(
        config.out,
        field=None if config.density is None else read_dgrid(config.density),
        truth=None if config.truth is None else read_graph(config.truth),
        recon=None if config.recon is None else read_reconstructed_graph(config.recon),
    )
    return EXIT_OK


def cmd_pipeline(config: RunConfig) -> int:
    _require(config, "omega")
    params = config.noise_params()
    delta = config.delta
    if delta is None:
        lo, hi = delta_range(params)
        delta = (lo + hi) / 2
        logger.info("Using delta=%g, the midpoint of (%g, %g)", delta, lo, hi)
    trial = run_trial(
        _truth(config),
        params,
        config.grid(),
        config.seed,
        delta,
        resolution=config.resolution,
        noise_mode=config.noise_mode,
    )
    if not trial.report.passed and config.save_failures is not None:
        save_failure(trial, config.save_failures)
    return _emit_report(trial.report, config.out)


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nx", type=int, help="Grid vertex count in x")
    parser.add_argument("--ny", type=int, help="Grid vertex count in y")
    parser.add_argument("--spacing", type=float, help="Grid step (default 1)")
    parser.add_argument("--origin", type=float, nargs=2, metavar=("X", "Y"), help="Grid origin")


def _add_noise(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--omega", type=float, help="Region radius")
    parser.add_argument("--beta1", type=float, help="Vertex-region level (default 10)")
    parser.add_argument("--beta2", type=float, help="Edge-region level (default 4)")
    parser.add_argument("--nu", type=float, help="Noise amplitude (default 1)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file with default arguments")
    common.add_argument(
        "--log-level",
        type=str.upper,
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default WARNING)",
    )
    common.add_argument("--out", help="Output path")

    parser = argparse.ArgumentParser(
        prog="dmt-graph",
        description="Reconstruct embedded graphs from 2D density fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", parents=[common], help="Synthesize a density from a graph")
    p.add_argument("--graph", help="Ground-truth graph JSON")
    p.add_argument("--family", choices=sorted(FAMILIES), help="Built-in ground-truth graph")
    _add_noise(p)
    _add_grid(p)
    p.add_argument("--seed", type=int, help="Noise seed (default 0)")
    p.add_argument("--delta", type=float, help="Validate a cut-off against the noise model")
    p.add_argument("--noise-mode", choices=NOISE_MODES, help="Noise distribution (default uniform)")
    p.add_argument("--print-delta-range", action="store_true", help="Print the valid delta window")

    p = sub.add_parser("hist", parents=[common], help="Histogram density from points")
    p.add_argument("--points", help="CSV of x,y samples")
    _add_grid(p)

    p = sub.add_parser("kde", parents=[common], help="Kernel density estimate from points")
    p.add_argument("--points", help="CSV of x,y samples")
    p.add_argument("--bandwidth", type=float, help="Gaussian kernel bandwidth")
    _add_grid(p)

    p = sub.add_parser("reconstruct", parents=[common], help="Reconstruct a graph from a density")
    p.add_argument("--density", help="DGRID density file")
    p.add_argument("--delta", type=float, help="Persistence cut-off")
    p.add_argument("--diagram", help="Persistence diagram CSV output")
    p.add_argument("--cross-check", action="store_true", help="Compare against the oracle reduction")
    _add_noise(p)

    p = sub.add_parser("verify", parents=[common], help="Verify a reconstruction")
    p.add_argument("--truth", help="Ground-truth graph JSON")
    p.add_argument("--recon", help="Reconstructed graph JSON")
    p.add_argument("--omega", type=float, help="Region radius")
    p.add_argument("--resolution", type=float, help="Hausdorff sampling step (default spacing/4)")
    _add_grid(p)

    p = sub.add_parser("render", parents=[common], help="Render to SVG")
    p.add_argument("--density", help="DGRID density file")
    p.add_argument("--truth", help="Ground-truth graph JSON")
    p.add_argument("--recon", help="Reconstructed graph JSON")

    p = sub.add_parser("pipeline", parents=[common], help="Synthesize, reconstruct and verify")
    p.add_argument("--graph", help="Ground-truth graph JSON")
    p.add_argument("--family", choices=sorted(FAMILIES), help="Built-in ground-truth graph")
    _add_noise(p)
    _add_grid(p)
    p.add_argument("--seed", type=int, help="Noise seed (default 0)")
    p.add_argument("--delta", type=float, help="Persistence cut-off (default: midpoint of the valid window)")
    p.add_argument("--resolution", type=float, help="Hausdorff sampling step (default spacing/4)")
    p.add_argument("--noise-mode", choices=NOISE_MODES, help="Noise distribution (default uniform)")
    p.add_argument("--save-failures", help="Directory for counterexample fixtures")
    return parser


_RUN_FIELDS = set(RunConfig.__struct_fields__)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """File config (if any) overridden by the flags actually given."""
    config = RunConfig() if args.config is None else load_run_config(args.config)
    overrides = {
        k: (tuple(v) if k == "origin" else v)
        for k, v in vars(args).items()
        if k in _RUN_FIELDS and v is not None
    }
    config = msgspec.structs.replace(config, **overrides)
    config.validate()
    return config


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = resolve_config(args)
        if args.command == "synth":
            return cmd_synth(config, print_range=args.print_delta_range)
        if args.command == "hist":
            return cmd_hist(config)
        if args.command == "kde":
            return cmd_kde(config)
        if args.command == "reconstruct":
            return cmd_reconstruct(config, cross_check=args.cross_check)
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "render":
            return cmd_render(config)
        return cmd_pipeline(config)
    except (DmtGraphError, OSError) as e:
        logger.error("%s", e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
