"""Two-dimensional cubical complex over a regular grid.

Cells are indexed densely: all vertices, then horizontal edges, then
vertical edges, then squares, each block in row-major order (row ``j``
outer, column ``i`` inner). Face and coface incidence is precomputed
from that arithmetic layout, so queries are O(1).
"""

from __future__ import annotations

import logging

import msgspec
import numpy as np
from numpy.typing import NDArray

from dmt_graph.common import CellError
from dmt_graph.config import GridSpec
from dmt_graph.constants import (
    DIM_EDGE,
    DIM_SQUARE,
    DIM_VERTEX,
    ORIENT_HORIZONTAL,
    ORIENT_NONE,
    ORIENT_VERTICAL,
)

logger = logging.getLogger(__name__)


class Cell(msgspec.Struct, frozen=True, order=True):
    """A cell of the cubical complex.

    Parameters
    ----------
    dim : int
        0 (vertex), 1 (edge) or 2 (square).
    i, j : int
        Anchor: the lowest-coordinate vertex of the cell.
    orientation : int, default ORIENT_NONE
        ORIENT_HORIZONTAL or ORIENT_VERTICAL for edges, ORIENT_NONE otherwise.
    """

    dim: int
    i: int
    j: int
    orientation: int = ORIENT_NONE

    @classmethod
    def vertex(cls, i: int, j: int) -> Cell:
        return cls(DIM_VERTEX, i, j)

    @classmethod
    def hedge(cls, i: int, j: int) -> Cell:
        return cls(DIM_EDGE, i, j, ORIENT_HORIZONTAL)

    @classmethod
    def vedge(cls, i: int, j: int) -> Cell:
        return cls(DIM_EDGE, i, j, ORIENT_VERTICAL)

    @classmethod
    def square(cls, i: int, j: int) -> Cell:
        return cls(DIM_SQUARE, i, j)


class CubicalComplex:
    """The cubical complex K of a grid.

    Immutable after construction; safe for concurrent reads.

    Parameters
    ----------
    grid : GridSpec
        The grid; validated on construction.
    """

    def __init__(self, grid: GridSpec) -> None:
        grid.validate()
        self.grid = grid
        nx, ny = grid.nx, grid.ny
        self.nx = nx
        self.ny = ny
        self.n_vertices = nx * ny
        self.n_hedges = (nx - 1) * ny
        self.n_vedges = nx * (ny - 1)
        self.n_edges = self.n_hedges + self.n_vedges
        self.n_squares = (nx - 1) * (ny - 1)
        self.hedge_base = self.n_vertices
        self.vedge_base = self.hedge_base + self.n_hedges
        self.square_base = self.vedge_base + self.n_vedges
        self.size = self.square_base + self.n_squares

        self._faces: list[tuple[int, ...]] = [()] * self.size
        self._cofaces: list[tuple[int, ...]] = [()] * self.size
        self._build_incidence()
        logger.debug(
            "Built complex %dx%d: %d vertices, %d edges, %d squares",
            nx, ny, self.n_vertices, self.n_edges, self.n_squares,
        )

    def _build_incidence(self) -> None:
        nx, ny = self.nx, self.ny
        hb, vb, sb = self.hedge_base, self.vedge_base, self.square_base
        faces = self._faces
        cofaces: list[list[int]] = [[] for _ in range(self.size)]

        for j in range(ny):
            for i in range(nx - 1):
                e = hb + j * (nx - 1) + i
                faces[e] = (j * nx + i, j * nx + i + 1)
        for j in range(ny - 1):
            for i in range(nx):
                e = vb + j * nx + i
                faces[e] = (j * nx + i, (j + 1) * nx + i)
        for j in range(ny - 1):
            for i in range(nx - 1):
                s = sb + j * (nx - 1) + i
                faces[s] = (
                    hb + j * (nx - 1) + i,
                    hb + (j + 1) * (nx - 1) + i,
                    vb + j * nx + i,
                    vb + j * nx + i + 1,
                )
        # Cells are visited in ascending index, so coface lists come out sorted.
        for c in range(self.n_vertices, self.size):
            for f in faces[c]:
                cofaces[f].append(c)
        self._cofaces = [tuple(cf) for cf in cofaces]

    # -- index <-> cell -------------------------------------------------

    def dim(self, index: int) -> int:
        if index < self.hedge_base:
            return DIM_VERTEX
        if index < self.square_base:
            return DIM_EDGE
        return DIM_SQUARE

    def index(self, cell: Cell) -> int:
        """Dense index of ``cell``; raises CellError if it is not in the complex."""
        nx, ny = self.nx, self.ny
        i, j = cell.i, cell.j
        if cell.dim == DIM_VERTEX and cell.orientation == ORIENT_NONE:
            if 0 <= i < nx and 0 <= j < ny:
                return j * nx + i
        elif cell.dim == DIM_EDGE and cell.orientation == ORIENT_HORIZONTAL:
            if 0 <= i < nx - 1 and 0 <= j < ny:
                return self.hedge_base + j * (nx - 1) + i
        elif cell.dim == DIM_EDGE and cell.orientation == ORIENT_VERTICAL:
            if 0 <= i < nx and 0 <= j < ny - 1:
                return self.vedge_base + j * nx + i
        elif cell.dim == DIM_SQUARE and cell.orientation == ORIENT_NONE:
            if 0 <= i < nx - 1 and 0 <= j < ny - 1:
                return self.square_base + j * (nx - 1) + i
        raise CellError(f"{cell} is outside the {nx}x{ny} complex")

    def cell(self, index: int) -> Cell:
        """Cell at dense ``index``."""
        nx = self.nx
        if not 0 <= index < self.size:
            raise CellError(f"cell index {index} outside [0, {self.size})")
        if index < self.hedge_base:
            return Cell.vertex(index % nx, index // nx)
        if index < self.vedge_base:
            k = index - self.hedge_base
            return Cell.hedge(k % (nx - 1), k // (nx - 1))
        if index < self.square_base:
            k = index - self.vedge_base
            return Cell.vedge(k % nx, k // nx)
        k = index - self.square_base
        return Cell.square(k % (nx - 1), k // (nx - 1))

    def cells(self) -> list[Cell]:
        return [self.cell(c) for c in range(self.size)]

    # -- incidence on indices -------------------------------------------

    def face_indices(self, index: int) -> tuple[int, ...]:
        return self._faces[index]

    def coface_indices(self, index: int) -> tuple[int, ...]:
        return self._cofaces[index]

    def vertex_indices(self, index: int) -> tuple[int, ...]:
        """Grid vertices spanned by a cell (itself for a vertex)."""
        d = self.dim(index)
        if d == DIM_VERTEX:
            return (index,)
        if d == DIM_EDGE:
            return self._faces[index]
        bottom, top = self._faces[index][0], self._faces[index][1]
        return self._faces[bottom] + self._faces[top]

    def other_endpoint(self, edge: int, vertex: int) -> int:
        a, b = self._faces[edge]
        return b if a == vertex else a

    def other_coface(self, edge: int, square: int) -> int:
        """The square on the other side of ``edge``, or -1 on the rectangle boundary."""
        for s in self._cofaces[edge]:
            if s != square:
                return s
        return -1

    # -- geometry ----------------------------------------------------------

    def vertex_ij(self, vertex: int) -> tuple[int, int]:
        return vertex % self.nx, vertex // self.nx

    def world(self, vertex: int) -> tuple[float, float]:
        """World coordinates of a vertex cell."""
        i, j = self.vertex_ij(vertex)
        return self.grid.world(i, j)

    def vertex_coordinates(self) -> NDArray[np.float64]:
        """World coordinates of all vertices, shape (nx*ny, 2), in index order."""
        jj, ii = np.divmod(np.arange(self.n_vertices), self.nx)
        x0, y0 = self.grid.origin
        return np.column_stack((x0 + self.grid.spacing * ii, y0 + self.grid.spacing * jj))

    def counts(self) -> tuple[int, int, int]:
        return self.n_vertices, self.n_edges, self.n_squares

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_squares


def build_complex(grid: GridSpec) -> CubicalComplex:
    """Build the cubical complex of ``grid``.

    Raises
    ------
    GridError
        If the grid violates its bounds.
    """
    return CubicalComplex(grid)


def faces(complex_: CubicalComplex, cell: Cell) -> list[Cell]:
    """Proper codimension-one faces of ``cell``, ordered by dense index."""
    return [complex_.cell(f) for f in complex_.face_indices(complex_.index(cell))]


def cofaces(complex_: CubicalComplex, cell: Cell) -> list[Cell]:
    """Codimension-one cofaces of ``cell``, ordered by dense index."""
    return [complex_.cell(c) for c in complex_.coface_indices(complex_.index(cell))]
