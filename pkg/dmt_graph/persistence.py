"""Super-level-set persistence of a density field on the cubical complex."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator

import msgspec
import numpy as np
from numpy.typing import NDArray

from dmt_graph.common import FieldSizeError, OracleSizeError, UnionFind
from dmt_graph.complex import Cell, CubicalComplex
from dmt_graph.constants import DIM_EDGE, DIM_SQUARE, DIM_VERTEX, ORACLE_MAX_CELLS
from dmt_graph.density import DensityField

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Filtration:
    """All cells of a complex in super-level order.

    Attributes
    ----------
    complex : CubicalComplex
    values : NDArray[np.float64]
        Filtration value per dense cell index (min over the cell's vertices).
    order : NDArray[np.int64]
        Dense cell indices by descending value, then ascending dimension,
        then ascending index.
    position : NDArray[np.int64]
        Inverse of ``order``: position of each dense index.
    """

    complex: CubicalComplex
    values: NDArray[np.float64]
    order: NDArray[np.int64]
    position: NDArray[np.int64]

    def __len__(self) -> int:
        return len(self.order)


def cell_values(complex_: CubicalComplex, field: DensityField) -> NDArray[np.float64]:
    """Upper-star extension: each cell takes the minimum of its vertex values."""
    if (field.grid.nx, field.grid.ny) != (complex_.nx, complex_.ny):
        raise FieldSizeError(
            f"density is {field.grid.nx}x{field.grid.ny}, complex is {complex_.nx}x{complex_.ny}"
        )
    img = field.as_image()
    hedges = np.minimum(img[:, :-1], img[:, 1:])
    vedges = np.minimum(img[:-1, :], img[1:, :])
    squares = np.minimum(hedges[:-1, :], hedges[1:, :])
    return np.concatenate((img.ravel(), hedges.ravel(), vedges.ravel(), squares.ravel()))


def build_filtration(complex_: CubicalComplex, field: DensityField) -> Filtration:
    """Order the cells of ``complex_`` by the super-level filtration of ``field``.

    Raises
    ------
    FieldSizeError
        If the field and the complex disagree on grid size.
    """
    values = cell_values(complex_, field)
    index = np.arange(complex_.size, dtype=np.int64)
    dims = np.concatenate((
        np.full(complex_.n_vertices, DIM_VERTEX),
        np.full(complex_.n_edges, DIM_EDGE),
        np.full(complex_.n_squares, DIM_SQUARE),
    ))
    # lexsort: the last key is the primary one.
    order = np.lexsort((index, dims, -values)).astype(np.int64)
    position = np.empty_like(order)
    position[order] = index
    return Filtration(complex_, values, order, position)


class PersistencePair(msgspec.Struct, frozen=True):
    """A birth/death pair of the filtration.

    Parameters
    ----------
    dim : int
        Dimension of the birth cell.
    birth : int
        Dense index of the birth cell.
    death : int | None
        Dense index of the death cell, None for an essential class.
    birth_value : float
    death_value : float
        ``math.inf`` for essential pairs.
    """

    dim: int
    birth: int
    death: int | None
    birth_value: float
    death_value: float

    @property
    def is_essential(self) -> bool:
        return self.death is None

    @property
    def persistence(self) -> float:
        if self.death is None:
            return math.inf
        return self.birth_value - self.death_value


class PersistenceDiagram:
    """The persistence pairing P(K), indexed by birth and by death cell."""

    def __init__(self, complex_: CubicalComplex, pairs: list[PersistencePair]) -> None:
        self.complex = complex_
        self.pairs: tuple[PersistencePair, ...] = tuple(pairs)
        self._by_birth = {p.birth: p for p in self.pairs}
        self._by_death = {p.death: p for p in self.pairs if p.death is not None}

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[PersistencePair]:
        return iter(self.pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return self.pairs == other.pairs

    def pair_of_birth(self, cell: int) -> PersistencePair | None:
        return self._by_birth.get(cell)

    def pair_of_death(self, cell: int) -> PersistencePair | None:
        return self._by_death.get(cell)

    def cell(self, index: int) -> Cell:
        return self.complex.cell(index)

    def pairing(self) -> set[tuple[int, int | None]]:
        """The pairing as (birth, death) dense-index tuples."""
        return {(p.birth, p.death) for p in self.pairs}

    def pairs_by_dim(self, dim: int) -> list[PersistencePair]:
        return [p for p in self.pairs if p.dim == dim]

    def finite_pairs(self) -> list[PersistencePair]:
        return [p for p in self.pairs if p.death is not None]

    def essential_pairs(self) -> list[PersistencePair]:
        return [p for p in self.pairs if p.death is None]

    def betti_at_infinity(self) -> tuple[int, int, int]:
        """Essential class count per dimension."""
        counts = [0, 0, 0]
        for p in self.essential_pairs():
            counts[p.dim] += 1
        return counts[0], counts[1], counts[2]

    def select(self, min_persistence: float) -> list[PersistencePair]:
        """Pairs with persistence >= ``min_persistence`` (essential pairs included)."""
        return [p for p in self.pairs if p.persistence >= min_persistence]


def _make_diagram(filtration: Filtration, raw: list[tuple[int, int | None]]) -> PersistenceDiagram:
    complex_ = filtration.complex
    values = filtration.values
    position = filtration.position
    raw.sort(key=lambda bd: position[bd[0]])
    pairs = [
        PersistencePair(
            dim=complex_.dim(b),
            birth=int(b),
            death=None if d is None else int(d),
            birth_value=float(values[b]),
            death_value=math.inf if d is None else float(values[d]),
        )
        for b, d in raw
    ]
    return PersistenceDiagram(complex_, pairs)


def reduce(filtration: Filtration) -> PersistenceDiagram:
    """Compute the persistence pairing of ``filtration``.

    Dimension-0 pairs come from a union-find sweep with the elder rule.
    Dimension-1 pairs come from the same sweep on the dual graph (squares
    plus one outer node) in reverse filtration order. The result is the
    pairing of the standard Z/2 column reduction.
    """
    complex_ = filtration.complex
    order = filtration.order.tolist()
    position = filtration.position.tolist()
    n_vertices = complex_.n_vertices
    square_base = complex_.square_base
    raw: list[tuple[int, int | None]] = []

    # Vertex/edge pairs. oldest[root] is the earliest-born vertex of the component.
    uf = UnionFind(n_vertices)
    oldest = list(range(n_vertices))
    negative_edges: set[int] = set()
    for c in order:
        if c < n_vertices or c >= square_base:
            continue
        a, b = complex_.face_indices(c)
        ra, rb = uf.find(a), uf.find(b)
        if ra == rb:
            continue
        va, vb = oldest[ra], oldest[rb]
        young, elder = (va, vb) if position[va] > position[vb] else (vb, va)
        raw.append((young, c))
        negative_edges.add(c)
        uf.union(ra, rb)
        oldest[uf.find(ra)] = elder
    essential_vertices = [v for v in range(n_vertices) if oldest[uf.find(v)] == v]

    # Edge/square pairs on the dual graph; node n_squares is the outer face.
    n_squares = complex_.n_squares
    outer = n_squares
    dual = UnionFind(n_squares + 1)
    # youngest[root]: square of the component that appears last in forward order.
    youngest = list(range(n_squares + 1))
    killed_square: set[int] = set()
    essential_edges = []
    for c in reversed(order):
        if c < n_vertices or c >= square_base or c in negative_edges:
            continue
        cof = [s - square_base for s in complex_.coface_indices(c)]
        a = cof[0]
        b = cof[1] if len(cof) == 2 else outer
        ra, rb = dual.find(a), dual.find(b)
        if ra == rb:
            essential_edges.append(c)
            continue
        sa, sb = youngest[ra], youngest[rb]
        if sa == outer:
            dying, survivor = sb, sa
        elif sb == outer:
            dying, survivor = sa, sb
        elif position[square_base + sa] < position[square_base + sb]:
            dying, survivor = sa, sb
        else:
            dying, survivor = sb, sa
        raw.append((c, square_base + dying))
        killed_square.add(dying)
        dual.union(ra, rb)
        youngest[dual.find(ra)] = survivor

    raw.extend((v, None) for v in essential_vertices)
    raw.extend((e, None) for e in essential_edges)
    raw.extend(
        (square_base + s, None) for s in range(n_squares) if s not in killed_square
    )
    diagram = _make_diagram(filtration, raw)
    logger.info(
        "Reduced filtration of %d cells: %d pairs, %d essential",
        len(order), len(diagram), len(diagram.essential_pairs()),
    )
    return diagram


def oracle_reduce(filtration: Filtration) -> PersistenceDiagram:
    """Textbook left-to-right boundary-matrix reduction over Z/2.

    Reference semantics for :func:`reduce`; cubic in the worst case.

    Raises
    ------
    OracleSizeError
        If the complex has more than ``ORACLE_MAX_CELLS`` cells.
    """
    complex_ = filtration.complex
    if complex_.size > ORACLE_MAX_CELLS:
        raise OracleSizeError(
            f"oracle refuses {complex_.size} cells (limit {ORACLE_MAX_CELLS})"
        )
    order = filtration.order.tolist()
    position = filtration.position.tolist()
    pivot_of: dict[int, int] = {}
    columns: dict[int, set[int]] = {}
    raw: list[tuple[int, int | None]] = []
    paired: set[int] = set()

    for j, c in enumerate(order):
        column = {position[f] for f in complex_.face_indices(c)}
        while column:
            low = max(column)
            other = pivot_of.get(low)
            if other is None:
                break
            column ^= columns[other]
        if column:
            low = max(column)
            pivot_of[low] = j
            columns[j] = column
            birth = order[low]
            raw.append((birth, c))
            paired.add(birth)
            paired.add(c)

    raw.extend((c, None) for c in order if c not in paired)
    return _make_diagram(filtration, raw)
