import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from topocrystal import (CycleCoords, Graph, Path, boundary, builtin_graph, cycle_basis, inner_product,
                         is_cycle, norm_sq, parse_graph, path_chain, project, spanning_tree)
from topocrystal.chains import adjoint_boundary, chain_dot, edge_chain, vertex_chain
from topocrystal.generators import random_connected
from topocrystal.graph import DirectedEdge

from conftest import loop_graph, small_builtins

F = Fraction


def test_boundary_examples(theta):
    assert boundary(theta, edge_chain(theta, DirectedEdge(0))) == (-1, 1)
    assert boundary(theta, (1, -1, 0)) == (0, 0)


def test_path_chain_examples(theta):
    assert path_chain(theta, Path(0)) == (0, 0, 0)
    assert path_chain(theta, Path.parse(0, "+0 -1")) == (1, -1, 0)
    assert path_chain(theta, Path.parse(0, "+0 -0 +1")) == (0, 1, 0)


def test_adjoint_boundary_examples(theta):
    assert adjoint_boundary(theta, vertex_chain(theta, 1)) == (1, 1, 1)
    assert adjoint_boundary(theta, vertex_chain(theta, 0)) == (-1, -1, -1)


def test_adjoint_is_transpose():
    rng = random.Random(2)
    for _ in range(50):
        g = random_connected(rng)
        c = tuple(rng.randint(-3, 3) for _ in range(g.edge_count))
        x = tuple(rng.randint(-3, 3) for _ in range(g.vertex_count))
        assert chain_dot(boundary(g, c), x) == chain_dot(c, adjoint_boundary(g, x))


def test_spanning_tree_examples(theta, k4):
    assert spanning_tree(theta) == {0}
    assert spanning_tree(Graph(1, ())) == set()
    assert spanning_tree(k4) == {0, 1, 2}


def test_cycle_basis_theta(theta):
    b = cycle_basis(theta)
    assert b.columns == ((-1, 1, 0), (-1, 0, 1))
    assert b.gram == ((2, 1), (1, 2))
    assert b.det == 3
    assert b.rank == 2


def test_cycle_basis_tree_and_loop():
    tree = parse_graph("e 0 1\ne 1 2\ne 1 3")
    b = cycle_basis(tree)
    assert b.rank == 0 and b.columns == () and b.det == 1
    lp = cycle_basis(loop_graph())
    assert lp.columns == ((1,),)
    assert lp.gram == ((1,),)


def test_projection_theta(theta):
    b = cycle_basis(theta)
    y = project(b, (1, 0, 0))
    assert y.values == (F(-1, 3), F(-1, 3))
    assert inner_product(b, y, y) == F(2, 3)
    y2 = project(b, (0, 1, 0))
    assert inner_product(b, y, y2) == F(-1, 3)
    assert inner_product(b, y, CycleCoords.zero(2)) == 0
    # chain form: pi(e1) = (2 e1 - e2 - e3) / 3
    assert b.chain_of(y) == (F(2, 3), F(-1, 3), F(-1, 3))


def test_projection_fixes_cycles_and_kills_cuts():
    for g in small_builtins():
        b = cycle_basis(g)
        for col in b.columns:
            assert b.chain_of(project(b, col)) == col
        for v in range(g.vertex_count):
            assert project(b, adjoint_boundary(g, vertex_chain(g, v))).is_zero()


def _residual_orthogonal(g, c):
    b = cycle_basis(g)
    y = project(b, c)
    yc = b.chain_of(y)
    resid = [F(x) - w for x, w in zip(c, yc)]
    return b, y, yc, resid


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_projection_characterization(seed):
    rng = random.Random(seed)
    g = random_connected(rng)
    c = tuple(rng.randint(-4, 4) for _ in range(g.edge_count))
    b, y, yc, resid = _residual_orthogonal(g, c)
    assert is_cycle(g, yc)
    assert all(chain_dot(resid, col) == 0 for col in b.columns)
    # Pythagoras and idempotence
    assert chain_dot(c, c) == norm_sq(b, y) + chain_dot(resid, resid)
    assert project(b, yc) == y


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_inner_product_is_chain_dot(seed):
    rng = random.Random(seed)
    g = random_connected(rng)
    b = cycle_basis(g)
    y1 = CycleCoords.from_values([F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(b.rank)])
    y2 = CycleCoords.from_values([F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(b.rank)])
    assert inner_product(b, y1, y2) == chain_dot(b.chain_of(y1), b.chain_of(y2))


def test_gram_is_btb():
    g = builtin_graph("cube")
    b = cycle_basis(g)
    assert b.gram == tuple(tuple(chain_dot(u, v) for v in b.columns) for u in b.columns)
    inv = b.gram_inverse
    m = b.rank
    assert all(sum(b.gram[i][k] * inv[k][j] for k in range(m)) == (i == j) for i in range(m) for j in range(m))


def test_cycle_coords_normalization():
    assert CycleCoords((2, 4), 6) == CycleCoords((1, 2), 3)
    assert CycleCoords((1, -1), -2).values == (F(-1, 2), F(1, 2))
    assert CycleCoords((3, -1), 2).residue() == CycleCoords((1, 1), 2)
    assert CycleCoords((4, 2), 2).is_lattice_point()
    with pytest.raises(ZeroDivisionError):
        CycleCoords((1,), 0)


def test_cycle_coords_rejects_non_cycle(theta):
    with pytest.raises(ValueError):
        cycle_basis(theta).cycle_coords((1, 0, 0))


def test_tree_paths(k4):
    b = cycle_basis(k4)
    for v in range(4):
        p = b.tree_path(v)
        assert k4.path_end(p) == v
        assert path_chain(k4, p) == b.tree_chain(v)
