"""Tests for the super-level filtration and persistence pairing."""

import math
from collections import Counter

import numpy as np
import pytest

from dmt_graph.common import FieldSizeError, OracleSizeError
from dmt_graph.complex import build_complex
from dmt_graph.config import GridSpec, NoiseParams
from dmt_graph.density import DensityField, synth_density
from dmt_graph.persistence import Filtration, build_filtration, oracle_reduce, reduce


def _diagram(field, oracle=False):
    k = build_complex(field.grid)
    f = build_filtration(k, field)
    return (oracle_reduce if oracle else reduce)(f)


class TestBuildFiltration:
    """Tests for the cell order."""

    def test_edge_follows_its_lower_vertex(self, make_field):
        field = make_field([[5.0, 3.0], [1.0, 0.0]])
        f = build_filtration(build_complex(field.grid), field)
        assert f.order.tolist() == [0, 1, 4, 2, 6, 3, 5, 7, 8]
        assert f.values[4] == 3.0
        assert f.values[8] == 0.0

    def test_constant_field_orders_by_dimension_then_index(self, complex_4x4):
        field = DensityField(complex_4x4.grid, np.full(16, 2.0))
        f = build_filtration(complex_4x4, field)
        assert f.order.tolist() == list(range(complex_4x4.size))

    def test_faces_precede_cofaces(self):
        rng = np.random.default_rng(5)
        grid = GridSpec(nx=6, ny=6)
        k = build_complex(grid)
        for _ in range(10):
            values = rng.integers(0, 4, size=36).astype(float)
            f = build_filtration(k, DensityField(grid, values))
            for c in range(k.size):
                for face in k.face_indices(c):
                    assert f.position[c] > f.position[face]

    def test_position_inverts_order(self, complex_4x4):
        field = DensityField(complex_4x4.grid, np.arange(16.0))
        f = build_filtration(complex_4x4, field)
        assert np.array_equal(f.order[f.position], np.arange(complex_4x4.size))

    def test_size_mismatch(self, complex_4x4):
        field = DensityField(GridSpec(nx=3, ny=3), np.zeros(9))
        with pytest.raises(FieldSizeError):
            build_filtration(complex_4x4, field)


class TestReduce:
    """Tests for the fast persistence pairing."""

    def test_single_square(self, make_field):
        diagram = _diagram(make_field([[9.0, 8.0], [7.0, 6.0]]))
        assert diagram.pairing() == {(1, 4), (2, 6), (3, 5), (7, 8), (0, None)}
        assert len(diagram.pairs_by_dim(0)) == 4
        assert len(diagram.pairs_by_dim(1)) == 1
        assert diagram.essential_pairs()[0].birth_value == 9.0

    def test_constant_field(self):
        grid = GridSpec(nx=5, ny=4)
        diagram = _diagram(DensityField(grid, np.full(20, 3.0)))
        essential = diagram.essential_pairs()
        assert [(p.dim, p.birth) for p in essential] == [(0, 0)]
        assert all(p.persistence == 0.0 for p in diagram.finite_pairs())

    def test_noiseless_cycle(self, rectangle_cycle, noiseless_params, grid_24):
        field = synth_density(rectangle_cycle, noiseless_params, grid_24, seed=0)
        diagram = _diagram(field)
        edge_square = [p for p in diagram.pairs_by_dim(1) if p.persistence > 0]
        assert [p.persistence for p in edge_square] == [4.0]
        vertex_edge = [p for p in diagram.finite_pairs() if p.dim == 0 and p.persistence > 0]
        assert [p.persistence for p in vertex_edge] == [6.0, 6.0, 6.0]
        assert len(diagram.essential_pairs()) == 1

    def test_every_cell_paired_once(self):
        rng = np.random.default_rng(9)
        grid = GridSpec(nx=7, ny=5)
        diagram = _diagram(DensityField(grid, rng.uniform(0, 10, size=35)))
        k = build_complex(grid)
        cells = [p.birth for p in diagram] + [p.death for p in diagram.finite_pairs()]
        assert sorted(cells) == list(range(k.size))
        assert 2 * len(diagram.finite_pairs()) + len(diagram.essential_pairs()) == k.size

    def test_finite_pairs_raise_dimension(self):
        rng = np.random.default_rng(2)
        grid = GridSpec(nx=6, ny=6)
        k = build_complex(grid)
        diagram = _diagram(DensityField(grid, rng.uniform(0, 1, size=36)))
        for p in diagram.finite_pairs():
            assert k.dim(p.death) == p.dim + 1
            assert p.birth_value >= p.death_value

    @pytest.mark.parametrize("seed", range(5))
    def test_betti_at_infinity(self, seed):
        rng = np.random.default_rng(seed)
        grid = GridSpec(nx=8, ny=6)
        diagram = _diagram(DensityField(grid, rng.integers(0, 3, size=48).astype(float)))
        assert diagram.betti_at_infinity() == (1, 0, 0)

    def test_select_includes_essential(self, make_field):
        diagram = _diagram(make_field([[9.0, 1.0], [1.0, 8.0]]))
        selected = diagram.select(5.0)
        assert any(p.is_essential for p in selected)
        assert all(p.persistence >= 5.0 for p in selected)

    def test_lookup_by_birth_and_death(self, make_field):
        diagram = _diagram(make_field([[9.0, 8.0], [7.0, 6.0]]))
        assert diagram.pair_of_birth(1).death == 4
        assert diagram.pair_of_death(8).birth == 7
        assert diagram.pair_of_death(0) is None


class TestOracleReduce:
    """Tests for the column-reduction oracle."""

    def test_single_square(self, make_field):
        field = make_field([[9.0, 8.0], [7.0, 6.0]])
        assert _diagram(field, oracle=True) == _diagram(field)

    def test_constant_field(self):
        field = DensityField(GridSpec(nx=4, ny=4), np.ones(16))
        assert _diagram(field, oracle=True) == _diagram(field)

    def test_noiseless_cycle(self, rectangle_cycle, noiseless_params, grid_24):
        field = synth_density(rectangle_cycle, noiseless_params, grid_24, seed=0)
        assert _diagram(field, oracle=True) == _diagram(field)

    def test_size_guard(self):
        grid = GridSpec(nx=80, ny=80)
        k = build_complex(grid)
        f = build_filtration(k, DensityField(grid, np.zeros(6400)))
        with pytest.raises(OracleSizeError, match="20000"):
            oracle_reduce(f)

    def test_diagram_independent_of_tie_break(self):
        rng = np.random.default_rng(17)
        grid = GridSpec(nx=6, ny=5)
        k = build_complex(grid)
        field = DensityField(grid, rng.permutation(30).astype(float))
        f = build_filtration(k, field)
        dims = np.array([k.dim(c) for c in range(k.size)])
        index = np.arange(k.size)
        # Same value and dimension order, reversed index tie-break.
        order = np.lexsort((-index, dims, -f.values))
        position = np.empty_like(order)
        position[order] = index
        other = oracle_reduce(Filtration(k, f.values, order, position))

        def points(diagram):
            return Counter((p.dim, p.birth_value, p.death_value) for p in diagram)

        assert points(other) == points(oracle_reduce(f))


class TestStability:
    """Diagram stability under small perturbations."""

    def test_significant_pairs_move_at_most_two_epsilon(self, rectangle_cycle, grid_24):
        params = NoiseParams(omega=2.0, beta1=10.0, beta2=4.0, nu=0.5)
        eps = 0.3
        field = synth_density(rectangle_cycle, params, grid_24, seed=4)
        rng = np.random.default_rng(4)
        perturbed = DensityField(
            grid_24, np.clip(field.values + rng.uniform(-eps, eps, size=field.values.size), 0, None)
        )

        def significant(diagram, dim):
            return sorted(
                p.persistence for p in diagram.finite_pairs()
                if p.dim == dim and p.persistence > 4 * eps
            )

        before, after = _diagram(field), _diagram(perturbed)
        for dim in (0, 1):
            a, b = significant(before, dim), significant(after, dim)
            assert len(a) == len(b)
            assert all(abs(x - y) <= 2 * eps + 1e-12 for x, y in zip(a, b))
        assert len(significant(before, 0)) == 3
        assert len(significant(before, 1)) == 1
        assert math.isinf(before.essential_pairs()[0].persistence)
