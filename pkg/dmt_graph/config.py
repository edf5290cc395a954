"""Configuration for the dmt-graph pipeline."""

from __future__ import annotations

import math
from pathlib import Path

import msgspec

from dmt_graph.common import GridError, ParameterError, ParseError
from dmt_graph.constants import (
    DEFAULT_BETA1,
    DEFAULT_BETA2,
    DEFAULT_NU,
    DEFAULT_OMEGA_IN_SPACINGS,
    NOISE_MODE_UNIFORM,
    NOISE_MODES,
)


class GridSpec(msgspec.Struct, frozen=True):
    """Regular axis-aligned grid discretizing the planar rectangle.

    Parameters
    ----------
    nx : int
        Vertex count in x (>= 2).
    ny : int
        Vertex count in y (>= 2).
    origin : tuple[float, float], default (0.0, 0.0)
        World coordinates of vertex (0, 0).
    spacing : float, default 1.0
        Grid step in world units (> 0).
    """

    nx: int
    ny: int
    origin: tuple[float, float] = (0.0, 0.0)
    spacing: float = 1.0

    def validate(self) -> None:
        if self.nx < 2:
            raise GridError(f"nx must be >= 2, was {self.nx}")
        if self.ny < 2:
            raise GridError(f"ny must be >= 2, was {self.ny}")
        if not (self.spacing > 0 and math.isfinite(self.spacing)):
            raise GridError(f"spacing must be > 0, was {self.spacing}")
        if not all(math.isfinite(c) for c in self.origin):
            raise GridError(f"origin must be finite, was {self.origin}")

    @property
    def num_vertices(self) -> int:
        return self.nx * self.ny

    @property
    def extent(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax) of the grid rectangle."""
        x0, y0 = self.origin
        return (x0, y0, x0 + (self.nx - 1) * self.spacing, y0 + (self.ny - 1) * self.spacing)

    def world(self, i: int, j: int) -> tuple[float, float]:
        """World coordinates of grid vertex (i, j)."""
        return (self.origin[0] + self.spacing * i, self.origin[1] + self.spacing * j)


class NoiseParams(msgspec.Struct, frozen=True):
    """The (omega, beta1, beta2, nu) two-threshold noise model.

    Parameters
    ----------
    omega : float
        Offset radius of vertex and edge regions, world units.
    beta1 : float, default 10.0
        Density level inside vertex regions.
    beta2 : float, default 4.0
        Density level inside edge regions.
    nu : float, default 1.0
        Additive noise amplitude.
    """

    omega: float
    beta1: float = DEFAULT_BETA1
    beta2: float = DEFAULT_BETA2
    nu: float = DEFAULT_NU

    def validate(self) -> None:
        if not self.omega > 0:
            raise ParameterError(f"omega must be > 0, was {self.omega}")
        if not self.nu >= 0:
            raise ParameterError(f"nu must be >= 0, was {self.nu}")
        if not self.beta1 > self.beta2 + 2 * self.nu:
            raise ParameterError(
                f"noise model requires beta1 > beta2 + 2*nu, "
                f"got beta1={self.beta1}, beta2={self.beta2}, nu={self.nu}"
            )
        if not self.beta2 > 2 * self.nu:
            raise ParameterError(
                f"noise model requires beta2 > 2*nu, got beta2={self.beta2}, nu={self.nu}"
            )


class ReconstructConfig(msgspec.Struct, frozen=True):
    """Configuration for one reconstruction run.

    Parameters
    ----------
    delta : float
        Persistence cut-off; pairs below it are cancelled.
    cross_check : bool, default False
        Compare the fast reduction against the column-reduction oracle
        (only for complexes within the oracle's size guard).
    check_field : bool, default False
        Assert matching invariants and acyclicity after simplification.
    """

    delta: float
    cross_check: bool = False
    check_field: bool = False

    def validate(self) -> None:
        if not self.delta > 0:
            raise ParameterError(f"delta must be > 0, was {self.delta}")


class RunConfig(msgspec.Struct, frozen=True, omit_defaults=True):
    """Parameters of one command-line invocation.

    Every field is optional so that a JSON config file can supply any
    subset; explicit command-line flags override file values.

    Parameters
    ----------
    graph : str | None
        Ground-truth graph JSON (synth, pipeline).
    family : str | None
        Built-in ground-truth family used when ``graph`` is not given.
    density : str | None
        DGRID density file (reconstruct, render).
    points : str | None
        CSV point samples (hist, kde).
    truth : str | None
        Ground-truth graph JSON (verify, render).
    recon : str | None
        Reconstructed graph JSON (verify, render).
    out : str | None
        Output path.
    diagram : str | None
        Persistence diagram CSV output (reconstruct).
    omega, beta1, beta2, nu : float | None
        Noise model; ``omega`` alone is enough for verify.
    delta : float | None
        Persistence cut-off.
    nx, ny : int | None
        Grid vertex counts.
    spacing : float, default 1.0
        Grid step.
    origin : tuple[float, float], default (0.0, 0.0)
        Grid origin.
    seed : int, default 0
        Seed for the noise generator.
    resolution : float | None
        Hausdorff sampling step; defaults to spacing / 4.
    bandwidth : float | None
        KDE bandwidth.
    noise_mode : str, default "uniform"
        One of "uniform", "high", "low", "checker".
    save_failures : str | None
        Directory receiving counterexample fixtures (pipeline).
    """

    graph: str | None = None
    family: str | None = None
    density: str | None = None
    points: str | None = None
    truth: str | None = None
    recon: str | None = None
    out: str | None = None
    diagram: str | None = None
    omega: float | None = None
    beta1: float | None = None
    beta2: float | None = None
    nu: float | None = None
    delta: float | None = None
    nx: int | None = None
    ny: int | None = None
    spacing: float = 1.0
    origin: tuple[float, float] = (0.0, 0.0)
    seed: int = 0
    resolution: float | None = None
    bandwidth: float | None = None
    noise_mode: str = NOISE_MODE_UNIFORM
    save_failures: str | None = None

    def validate(self) -> None:
        if self.noise_mode not in NOISE_MODES:
            raise ParameterError(f"Unsupported noise mode: {self.noise_mode!r}")

    def grid(self) -> GridSpec:
        if self.nx is None or self.ny is None:
            raise ParameterError("grid dimensions --nx and --ny are required")
        return GridSpec(nx=self.nx, ny=self.ny, origin=self.origin, spacing=self.spacing)

    def noise_params(self) -> NoiseParams | None:
        """The noise model, or None when omega is not given."""
        if self.omega is None:
            return None
        return NoiseParams(
            omega=self.omega,
            beta1=DEFAULT_BETA1 if self.beta1 is None else self.beta1,
            beta2=DEFAULT_BETA2 if self.beta2 is None else self.beta2,
            nu=DEFAULT_NU if self.nu is None else self.nu,
        )

    @property
    def levels_given(self) -> bool:
        """Whether any density level of the noise model was stated."""
        return any(v is not None for v in (self.beta1, self.beta2, self.nu))

    def threshold_params(self) -> NoiseParams | None:
        """Levels to check a cut-off against, or None when none was stated.

        Unstated levels take their defaults. The delta window does not
        depend on omega, which falls back to three spacings.
        """
        if not self.levels_given:
            return None
        return NoiseParams(
            omega=DEFAULT_OMEGA_IN_SPACINGS * self.spacing if self.omega is None else self.omega,
            beta1=DEFAULT_BETA1 if self.beta1 is None else self.beta1,
            beta2=DEFAULT_BETA2 if self.beta2 is None else self.beta2,
            nu=DEFAULT_NU if self.nu is None else self.nu,
        )


def load_run_config(path: str | Path) -> RunConfig:
    """Load a RunConfig from a JSON file."""
    path = Path(path)
    try:
        return msgspec.json.decode(path.read_bytes(), type=RunConfig)
    except msgspec.DecodeError as e:
        raise ParseError(f"invalid run config: {e}", path=str(path)) from e
