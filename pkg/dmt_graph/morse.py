"""Discrete vector fields and persistence-guided Morse cancellation."""

from __future__ import annotations

import enum
import logging
from typing import Iterable

import msgspec
import networkx as nx
import numpy as np

from dmt_graph.common import CancellationUsageError, CellError, ParameterError, TraceError
from dmt_graph.complex import Cell, CubicalComplex
from dmt_graph.constants import CRITICAL, DIM_EDGE, DIM_SQUARE, DIM_VERTEX
from dmt_graph.persistence import PersistenceDiagram

logger = logging.getLogger(__name__)


class CancelResult(enum.Enum):
    SUCCESS = "success"
    NOT_CANCELLABLE = "not_cancellable"


class VPath(msgspec.Struct, frozen=True):
    """An alternating V-path ``tau_0, sigma_0, tau_1, ..., tau_{r+1}`` of dense indices.

    A path of a single cell is the degenerate length-0 path.
    """

    cells: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cells)

    def as_cells(self, complex_: CubicalComplex) -> list[Cell]:
        return [complex_.cell(c) for c in self.cells]


class DiscreteVectorField:
    """A partial matching of cells with their codimension-one cofaces.

    ``partner[c]`` is the matched cell of ``c`` or ``CRITICAL``. Mutated in
    place by :func:`cancel_pair`; not safe to share across threads while
    mutating.
    """

    def __init__(self, complex_: CubicalComplex) -> None:
        self.complex = complex_
        self.partner: list[int] = [CRITICAL] * complex_.size
        self.cancellations = 0
        self.skipped = 0

    @classmethod
    def from_pairs(
        cls,
        complex_: CubicalComplex,
        pairs: Iterable[tuple[Cell, Cell]],
    ) -> DiscreteVectorField:
        """Build a field from (face, coface) cell pairs."""
        field = cls(complex_)
        for low, high in pairs:
            a, b = complex_.index(low), complex_.index(high)
            if a not in complex_.face_indices(b):
                raise CellError(f"{low} is not a face of {high}")
            if field.partner[a] != CRITICAL or field.partner[b] != CRITICAL:
                raise CellError(f"({low}, {high}) reuses an already paired cell")
            field._pair(a, b)
        return field

    def copy(self) -> DiscreteVectorField:
        other = DiscreteVectorField(self.complex)
        other.partner = list(self.partner)
        other.cancellations = self.cancellations
        other.skipped = self.skipped
        return other

    def _pair(self, low: int, high: int) -> None:
        self.partner[low] = high
        self.partner[high] = low

    def is_critical(self, index: int) -> bool:
        return self.partner[index] == CRITICAL

    def paired_up(self, index: int) -> bool:
        """True if ``index`` is matched with one of its cofaces."""
        p = self.partner[index]
        return p != CRITICAL and p > index

    def paired_down(self, index: int) -> bool:
        p = self.partner[index]
        return p != CRITICAL and p < index

    @property
    def is_trivial(self) -> bool:
        return all(p == CRITICAL for p in self.partner)

    def num_pairs(self) -> int:
        return sum(1 for c, p in enumerate(self.partner) if p != CRITICAL and p > c)

    def critical_indices(self) -> list[int]:
        return [c for c, p in enumerate(self.partner) if p == CRITICAL]

    def snapshot(self) -> bytes:
        """Byte image of the matching, for bit-identity comparisons."""
        return np.asarray(self.partner, dtype=np.int64).tobytes()

    def dump(self) -> str:
        """One ``cell_index -> partner_index | CRITICAL`` line per cell."""
        return "".join(
            f"{c} -> {'CRITICAL' if p == CRITICAL else p}\n" for c, p in enumerate(self.partner)
        )

    def check_matching(self) -> list[str]:
        """Violations of the matching invariants; empty when the field is valid."""
        problems = []
        for c, p in enumerate(self.partner):
            if p == CRITICAL:
                continue
            if not 0 <= p < self.complex.size:
                problems.append(f"{c} partnered with out-of-range {p}")
            elif self.partner[p] != c:
                problems.append(f"{c} -> {p} but {p} -> {self.partner[p]}")
            elif c < p and c not in self.complex.face_indices(p):
                problems.append(f"{c} is not a face of its partner {p}")
        return problems

    def vpath_digraph(self) -> nx.DiGraph:
        """Arrows face -> coface for each pair and coface -> face for every other incidence."""
        complex_ = self.complex
        graph = nx.DiGraph()
        graph.add_nodes_from(range(complex_.size))
        for c in range(complex_.n_vertices, complex_.size):
            p = self.partner[c]
            for f in complex_.face_indices(c):
                if f == p:
                    graph.add_edge(f, c)
                else:
                    graph.add_edge(c, f)
        return graph

    def is_acyclic(self) -> bool:
        """True if no closed V-path exists."""
        return nx.is_directed_acyclic_graph(self.vpath_digraph())


def init_trivial(complex_: CubicalComplex) -> DiscreteVectorField:
    """Field with every cell critical."""
    return DiscreteVectorField(complex_)


def _vertex_trace(field: DiscreteVectorField, start: int, target: int) -> list[int] | None:
    """Follow vertex pairings from ``start``; the path if it reaches ``target``."""
    complex_ = field.complex
    path = [start]
    w = start
    for _ in range(complex_.size):
        if w == target:
            return path
        e = field.partner[w]
        if e == CRITICAL:
            return None
        w = complex_.other_endpoint(e, w)
        path.append(e)
        path.append(w)
    raise TraceError(f"vertex trace from {start} exceeded {complex_.size} steps")


def _edge_trace(field: DiscreteVectorField, source: int, target: int, through: int) -> list[int] | None:
    """Walk backwards from edge ``target`` through its coface ``through`` to a face of ``source``."""
    complex_ = field.complex
    if through == source:
        return [target]
    reversed_path = [target]
    s = through
    for _ in range(complex_.size):
        if s < 0:
            return None
        e = field.partner[s]
        if e == CRITICAL or e > s:
            return None
        reversed_path.append(s)
        reversed_path.append(e)
        s = complex_.other_coface(e, s)
        if s == source:
            reversed_path.reverse()
            return reversed_path
    raise TraceError(f"edge trace into {target} exceeded {complex_.size} steps")


def vpaths_between(field: DiscreteVectorField, source: int, target: int) -> list[VPath]:
    """V-paths from the faces of critical cell ``source`` to critical cell ``target``.

    Both arguments are dense indices with dim(source) = dim(target) + 1.
    """
    complex_ = field.complex
    if not (field.is_critical(source) and field.is_critical(target)):
        return []
    paths = []
    if complex_.dim(target) == DIM_VERTEX:
        for w in complex_.face_indices(source):
            found = _vertex_trace(field, w, target)
            if found is not None:
                paths.append(VPath(tuple(found)))
    else:
        for s in complex_.coface_indices(target):
            found = _edge_trace(field, source, target, s)
            if found is not None:
                paths.append(VPath(tuple(found)))
    return paths


def find_vpaths(field: DiscreteVectorField, source: Cell, target: Cell) -> list[VPath]:
    """All V-paths from a face of ``source`` (dim p+1) to ``target`` (dim p).

    Empty when no path exists or when either cell is no longer critical.
    """
    complex_ = field.complex
    s, t = complex_.index(source), complex_.index(target)
    if source.dim != target.dim + 1 or target.dim not in (DIM_VERTEX, DIM_EDGE):
        raise CancellationUsageError(f"cannot join {source} to {target}: dimensions must be p+1, p")
    return vpaths_between(field, s, t)


def cancel_indices(field: DiscreteVectorField, sigma: int, tau: int) -> CancelResult:
    """Index form of :func:`cancel_pair`."""
    complex_ = field.complex
    if complex_.dim(tau) != complex_.dim(sigma) + 1 or complex_.dim(tau) not in (DIM_EDGE, DIM_SQUARE):
        raise CancellationUsageError(
            f"cancel_pair needs dim(tau) = dim(sigma) + 1, got {complex_.cell(sigma)}, {complex_.cell(tau)}"
        )
    if not field.is_critical(sigma) or not field.is_critical(tau):
        raise CancellationUsageError(
            f"cancel_pair needs critical cells, got {complex_.cell(sigma)}, {complex_.cell(tau)}"
        )
    paths = vpaths_between(field, tau, sigma)
    if len(paths) != 1:
        logger.debug("Pair (%d, %d) not cancellable: %d V-paths", sigma, tau, len(paths))
        return CancelResult.NOT_CANCELLABLE

    cells = paths[0].cells
    # tau_0 pairs with tau; each later tau_{i+1} takes over sigma_i.
    field._pair(cells[0], tau)
    for k in range(1, len(cells) - 1, 2):
        field._pair(cells[k + 1], cells[k])
    field.cancellations += 1
    return CancelResult.SUCCESS


def cancel_pair(field: DiscreteVectorField, sigma: Cell, tau: Cell) -> CancelResult:
    """Cancel the critical pair (sigma, tau) along their unique V-path.

    Returns NOT_CANCELLABLE, leaving the field untouched, when zero or
    several V-paths run from a face of ``tau`` to ``sigma``.

    Raises
    ------
    CancellationUsageError
        If either cell is not critical or dim(tau) != dim(sigma) + 1.
    """
    complex_ = field.complex
    return cancel_indices(field, complex_.index(sigma), complex_.index(tau))


def simplify(
    field: DiscreteVectorField,
    diagram: PersistenceDiagram,
    delta: float,
) -> DiscreteVectorField:
    """Cancel every finite pair with persistence below ``delta``.

    Pairs go in increasing persistence, ties by ascending death index, in a
    single pass. Failed attempts increment ``field.skipped``.
    """
    if not delta > 0:
        raise ParameterError(f"delta must be > 0, was {delta}")
    if not field.is_trivial:
        raise CancellationUsageError("simplify expects a freshly initialised field")
    candidates = sorted(
        (p for p in diagram.finite_pairs() if p.persistence < delta),
        key=lambda p: (p.persistence, p.death),
    )
    for pair in candidates:
        if not (field.is_critical(pair.birth) and field.is_critical(pair.death)):
            field.skipped += 1
            logger.debug("Pair (%d, %d) already consumed", pair.birth, pair.death)
            continue
        if cancel_indices(field, pair.birth, pair.death) is CancelResult.NOT_CANCELLABLE:
            field.skipped += 1
    logger.info(
        "Simplified with delta=%g: %d cancellations, %d skipped, %d critical cells left",
        delta, field.cancellations, field.skipped, len(field.critical_indices()),
    )
    return field


def critical_cells(field: DiscreteVectorField) -> tuple[list[Cell], list[Cell], list[Cell]]:
    """Critical cells grouped by dimension, each list in dense-index order."""
    out: tuple[list[Cell], list[Cell], list[Cell]] = ([], [], [])
    complex_ = field.complex
    for c in field.critical_indices():
        out[complex_.dim(c)].append(complex_.cell(c))
    return out
