"""Persistence diagram CSV export and import."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

from dmt_graph.common import ParseError
from dmt_graph.constants import DIAGRAM_CSV_HEADER, INFINITY_TOKEN
from dmt_graph.persistence import PersistenceDiagram, PersistencePair


def _fmt(value: float) -> str:
    return INFINITY_TOKEN if math.isinf(value) else format(value, ".17g")


def format_diagram_csv(diagram: PersistenceDiagram) -> str:
    """One row per pair; essential pairs have ``inf`` values and an empty death cell."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(DIAGRAM_CSV_HEADER.split(","))
    for p in diagram:
        writer.writerow([
            p.dim,
            _fmt(p.birth_value),
            _fmt(p.death_value),
            _fmt(p.persistence),
            p.birth,
            "" if p.death is None else p.death,
        ])
    return out.getvalue()


def parse_diagram_csv(text: str, path: str | None = None) -> list[PersistencePair]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != DIAGRAM_CSV_HEADER.split(","):
        raise ParseError(f"expected header {DIAGRAM_CSV_HEADER!r}", path=path, line=1)
    pairs = []
    for row in reader:
        if not row:
            continue
        try:
            dim, birth_value, death_value, _, birth, death = row
            pairs.append(
                PersistencePair(
                    dim=int(dim),
                    birth=int(birth),
                    death=int(death) if death else None,
                    birth_value=float(birth_value),
                    death_value=float(death_value),
                )
            )
        except ValueError as e:
            raise ParseError(f"malformed diagram row: {e}", path=path, line=reader.line_num) from e
    return pairs


def write_diagram_csv(diagram: PersistenceDiagram, path: str | Path) -> None:
    Path(path).write_text(format_diagram_csv(diagram))


def read_diagram_csv(path: str | Path) -> list[PersistencePair]:
    path = Path(path)
    return parse_diagram_csv(path.read_text(), path=str(path))
