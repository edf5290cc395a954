"""SVG rendering of density fields, ground-truth graphs and reconstructions."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from dmt_graph.common import UsageError
from dmt_graph.config import GridSpec
from dmt_graph.constants import (
    SVG_NODE_FILL,
    SVG_PIXELS_PER_SPACING,
    SVG_RECON_STROKE,
    SVG_TRUTH_STROKE,
)
from dmt_graph.density import DensityField, PlanarGraph
from dmt_graph.extraction import ReconstructedGraph

logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%(width).2f" height="%(height).2f" viewBox="0 0 %(width).2f %(height).2f">
<rect x="0" y="0" width="%(width).2f" height="%(height).2f" style="fill:#ffffff"/>
"""

POSTAMBLE = "</svg>\n"


class Canvas:
    """Maps world coordinates to SVG pixels, y pointing up."""

    def __init__(self, xmin: float, ymin: float, xmax: float, ymax: float, scale: float) -> None:
        self.xmin = xmin
        self.ymax = ymax
        self.scale = scale
        self.width = (xmax - xmin) * scale
        self.height = (ymax - ymin) * scale
        self.layers: list[tuple[str, list[str]]] = []

    def px(self, x: float, y: float) -> tuple[float, float]:
        return (x - self.xmin) * self.scale, (self.ymax - y) * self.scale

    def layer(self, name: str) -> list[str]:
        commands: list[str] = []
        self.layers.append((name, commands))
        return commands

    def to_svg(self) -> str:
        parts = [PREAMBLE % {"width": self.width, "height": self.height}]
        for name, commands in self.layers:
            parts.append(f'<g id="{name}">\n')
            parts.extend(c + "\n" for c in commands)
            parts.append("</g>\n")
        parts.append(POSTAMBLE)
        return "".join(parts)


def _canvas(
    grid: GridSpec | None,
    truth: PlanarGraph | None,
    recon: ReconstructedGraph | None,
) -> Canvas:
    if grid is not None:
        half = grid.spacing / 2
        xmin, ymin, xmax, ymax = grid.extent
        return Canvas(xmin - half, ymin - half, xmax + half, ymax + half, SVG_PIXELS_PER_SPACING / grid.spacing)
    points = []
    if truth is not None:
        points.extend(truth.polylines())
        points.append(truth.vertex_array())
    if recon is not None and recon.nodes:
        points.extend(np.asarray(e.polyline, dtype=np.float64) for e in recon.edges)
        points.append(np.asarray(recon.nodes, dtype=np.float64))
    pts = np.vstack(points) if points else np.zeros((1, 2))
    lo = pts.min(axis=0) - 1.0
    hi = pts.max(axis=0) + 1.0
    return Canvas(lo[0], lo[1], hi[0], hi[1], SVG_PIXELS_PER_SPACING)


def _polyline(canvas: Canvas, points, stroke: str, width: float) -> str:
    coords = " ".join("%.2f,%.2f" % canvas.px(x, y) for x, y in points)
    return (
        f'<polyline points="{coords}" style="fill:none;stroke:{stroke};'
        f'stroke-width:{width:.2f};stroke-linejoin:round"/>'
    )


def render_svg(
    field: DensityField | None = None,
    truth: PlanarGraph | None = None,
    recon: ReconstructedGraph | None = None,
) -> str:
    """Layered SVG: density pixels, ground truth, reconstruction, nodes.

    Density maps 0 to white and the field maximum to black.

    Raises
    ------
    UsageError
        If nothing is given to draw.
    """
    if field is None and truth is None and recon is None:
        raise UsageError("render needs at least one of density, truth or recon")
    canvas = _canvas(None if field is None else field.grid, truth, recon)
    stroke = max(canvas.scale * 0.25, 1.0)

    if field is not None:
        layer = canvas.layer("density")
        grid = field.grid
        top = float(field.values.max())
        size = canvas.scale * grid.spacing
        image = field.as_image()
        for j in range(grid.ny):
            for i in range(grid.nx):
                v = image[j, i]
                level = 255 if top <= 0 else int(round(255 * (1 - v / top)))
                x, y = canvas.px(*grid.world(i, j))
                layer.append(
                    f'<rect x="{x - size / 2:.2f}" y="{y - size / 2:.2f}" width="{size:.2f}" '
                    f'height="{size:.2f}" style="fill:rgb({level},{level},{level})"/>'
                )

    if truth is not None:
        layer = canvas.layer("truth")
        for line in truth.polylines():
            layer.append(_polyline(canvas, line, SVG_TRUTH_STROKE, stroke))

    if recon is not None:
        layer = canvas.layer("recon")
        for edge in recon.edges:
            layer.append(_polyline(canvas, edge.polyline, SVG_RECON_STROKE, stroke))
        nodes = canvas.layer("nodes")
        for x, y in recon.nodes:
            cx, cy = canvas.px(x, y)
            nodes.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{1.5 * stroke:.2f}" style="fill:{SVG_NODE_FILL}"/>')

    return canvas.to_svg()


def write_svg(path: str | Path, **inputs) -> None:
    Path(path).write_text(render_svg(**inputs))
    logger.info("Wrote %s", path)
