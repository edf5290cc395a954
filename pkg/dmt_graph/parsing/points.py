"""Parse point sample files: ``x,y`` CSV or whitespace-separated ``x y``."""

from __future__ import annotations

import csv
import logging
import math
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from dmt_graph.common import ParseError

logger = logging.getLogger(__name__)


def _fields(line: str) -> list[str]:
    if "," in line:
        return next(csv.reader([line]))
    return line.split()


def parse_points(text: str, path: str | None = None) -> NDArray[np.float64]:
    """Points as an (n, 2) array.

    Rows are comma separated, or whitespace separated when a row has no
    comma. Blank lines are ignored. A first row that is not numeric is
    taken as a header and skipped with a warning. Coordinates must be
    finite.
    """
    points: list[tuple[float, float]] = []
    seen_row = False
    for line_num, line in enumerate(text.splitlines(), start=1):
        row = _fields(line)
        if not any(cell.strip() for cell in row):
            continue
        first = not seen_row
        seen_row = True
        try:
            if len(row) != 2:
                raise ValueError(f"expected 2 columns, found {len(row)}")
            x, y = float(row[0]), float(row[1])
        except ValueError as e:
            if first:
                logger.warning("Skipping non-numeric header row in %s: %s", path or "<points>", row)
                continue
            raise ParseError(f"malformed point row: {e}", path=path, line=line_num) from e
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError(f"non-finite coordinate ({row[0]}, {row[1]})", path=path, line=line_num)
        points.append((x, y))
    return np.asarray(points, dtype=np.float64).reshape(-1, 2)


def read_points(path: str | Path) -> NDArray[np.float64]:
    path = Path(path)
    return parse_points(path.read_text(), path=str(path))
