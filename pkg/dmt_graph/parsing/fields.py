"""Read and write density fields in the DGRID v1 text format.

Layout::

    DGRID 1
    nx ny
    origin_x origin_y spacing
    <ny rows of nx values, row 0 at the lowest y>
"""

from __future__ import annotations

import logging
from pathlib import Path

from dmt_graph.common import DmtGraphError, ParseError
from dmt_graph.config import GridSpec
from dmt_graph.constants import DGRID_MAGIC, DGRID_SIGNIFICANT_DIGITS, DGRID_VERSION
from dmt_graph.density import DensityField

logger = logging.getLogger(__name__)


def _fmt(value: float) -> str:
    return format(value, f".{DGRID_SIGNIFICANT_DIGITS}g")


def format_dgrid(field: DensityField) -> str:
    grid = field.grid
    lines = [
        f"{DGRID_MAGIC} {DGRID_VERSION}",
        f"{grid.nx} {grid.ny}",
        f"{_fmt(grid.origin[0])} {_fmt(grid.origin[1])} {_fmt(grid.spacing)}",
    ]
    image = field.as_image()
    lines.extend(" ".join(_fmt(float(v)) for v in row) for row in image)
    return "\n".join(lines) + "\n"


def _numbers(tokens: list[str], kind, count: int, what: str, path: str | None, line: int) -> list:
    if len(tokens) != count:
        raise ParseError(f"expected {count} {what}, found {len(tokens)}", path=path, line=line)
    try:
        return [kind(t) for t in tokens]
    except ValueError as e:
        raise ParseError(f"malformed {what}: {e}", path=path, line=line) from e


def parse_dgrid(text: str, path: str | None = None) -> DensityField:
    """Parse DGRID v1 text.

    Raises
    ------
    ParseError
        With the offending line number.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or lines[0].split() != [DGRID_MAGIC, str(DGRID_VERSION)]:
        raise ParseError(f"expected header '{DGRID_MAGIC} {DGRID_VERSION}'", path=path, line=1)
    if len(lines) < 3:
        raise ParseError("truncated header", path=path, line=len(lines) + 1)
    nx, ny = _numbers(lines[1].split(), int, 2, "grid dimensions", path, 2)
    ox, oy, spacing = _numbers(lines[2].split(), float, 3, "origin and spacing", path, 3)
    grid = GridSpec(nx=nx, ny=ny, origin=(ox, oy), spacing=spacing)
    try:
        grid.validate()
    except DmtGraphError as e:
        raise ParseError(str(e), path=path, line=2) from e

    rows = lines[3:]
    if len(rows) != ny:
        raise ParseError(f"expected {ny} value rows, found {len(rows)}", path=path, line=4 + min(len(rows), ny))
    values: list[float] = []
    for j, row in enumerate(rows):
        values.extend(_numbers(row.split(), float, nx, "values", path, 4 + j))
    try:
        field = DensityField(grid, values)
    except DmtGraphError as e:
        raise ParseError(str(e), path=path) from e
    logger.debug("Parsed %dx%d density from %s", nx, ny, path)
    return field


def read_dgrid(path: str | Path) -> DensityField:
    path = Path(path)
    return parse_dgrid(path.read_text(), path=str(path))


def write_dgrid(field: DensityField, path: str | Path) -> None:
    Path(path).write_text(format_dgrid(field))
