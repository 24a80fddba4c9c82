import itertools
import random
from fractions import Fraction

import pytest

from topocrystal import (atom_residue_count, ball, builtin_graph, cycle_basis, gram_determinant,
                         lattice_quotient_order, packing_report, spanning_tree_count)
from topocrystal.generators import random_bridgeless, random_connected
from topocrystal.graph import DisconnectedGraphError, components, parse_graph
from topocrystal.linalg import in_column_lattice, smith_normal_form
from topocrystal.packing import cut_gram_determinant


def brute_tree_count(g):
    n, m = g.vertex_count, g.edge_count
    count = 0
    for subset in itertools.combinations(range(m), n - 1):
        sub = g.__class__(n, tuple(g.edge_pairs[j] for j in subset))
        if len(components(sub)) == 1:
            count += 1
    return count


def test_tree_count_examples():
    assert spanning_tree_count(builtin_graph("tetrahedron")) == 16
    assert spanning_tree_count(builtin_graph("icosidodecahedron")) == 208971104256000
    for n in range(2, 9):
        assert spanning_tree_count(builtin_graph("hosohedron", n)) == n
    with pytest.raises(DisconnectedGraphError):
        spanning_tree_count(parse_graph("v 2\n"))


def test_tree_count_brute_force():
    rng = random.Random(17)
    for _ in range(60):
        g = random_connected(rng, max_vertices=6, max_edges=9)
        t = brute_tree_count(g)
        assert spanning_tree_count(g) == t
        assert gram_determinant(cycle_basis(g)) == t
        assert cut_gram_determinant(g) == t


def test_gram_determinant_examples(theta):
    assert gram_determinant(cycle_basis(theta)) == 3
    assert gram_determinant(cycle_basis(parse_graph("e 0 1\ne 1 2"))) == 1
    assert gram_determinant(cycle_basis(builtin_graph("cube"))) == 384


def test_lattice_quotient(theta):
    b = cycle_basis(theta)
    assert smith_normal_form(b.gram) == [1, 3]
    assert lattice_quotient_order(b) == 3
    assert lattice_quotient_order(cycle_basis(builtin_graph("tetrahedron"))) == 16
    assert lattice_quotient_order(cycle_basis(parse_graph("e 0 1\ne 1 2"))) == 1


def test_residue_counts(theta):
    b = cycle_basis(theta)
    assert atom_residue_count(ball(theta, b, 2), b) == 2
    k4 = builtin_graph("tetrahedron")
    bk = cycle_basis(k4)
    assert atom_residue_count(ball(k4, bk, 3), bk) == 4
    cube = builtin_graph("cube")
    bc = cycle_basis(cube)
    with pytest.raises(ValueError):
        atom_residue_count(ball(cube, bc, 0), bc)
    assert atom_residue_count(ball(cube, bc, 0), bc, strict=False) == 1
    assert atom_residue_count(ball(theta, b, 0), b, strict=False) == 1


def test_residues_random_bridgeless():
    from topocrystal.graph import diameter
    rng = random.Random(5)
    for _ in range(40):
        g = random_bridgeless(rng)
        b = cycle_basis(g)
        assert atom_residue_count(ball(g, b, diameter(g)), b) == g.vertex_count


def test_dual_lattice_contains_projected_edges():
    # pi(e_j) pairs integrally with every cycle, and in dual coordinates lies in Z^m
    for name in ("tetrahedron", "cube", "petersen", "theta"):
        g = builtin_graph(name)
        b = cycle_basis(g)
        for num in b.edge_projections:
            gy = [sum(b.gram[i][k] * num[k] for k in range(b.rank)) for i in range(b.rank)]
            assert all(x % b.det == 0 for x in gy)
        # and they generate all of Z_1^*: G^{-1} e_i is an integer combination
        gen = [[b.edge_projections[j][i] for j in range(g.edge_count)] for i in range(b.rank)]
        for i in range(b.rank):
            target = [b.adjugate[k][i] for k in range(b.rank)]
            assert in_column_lattice(gen, target)


@pytest.mark.parametrize("name,fraction", [
    ("petersen", Fraction(1, 200)), ("dodecahedron", Fraction(1, 259200)), ("diamond", Fraction(1, 2)),
    ("theta", Fraction(2, 3)), ("tetrahedron", Fraction(1, 4)),
])
def test_packing_report(name, fraction):
    rep = packing_report(builtin_graph(name))
    assert rep.packing_fraction == fraction
    assert rep.residue_count == rep.vertex_count


def test_packing_report_petersen_fields():
    rep = packing_report(builtin_graph("petersen"))
    assert (rep.vertex_count, rep.tree_count) == (10, 2000)
    d = rep.as_dict()
    assert d["packing_fraction"] == "1/200" and d["spanning_trees"] == 2000


def test_packing_report_bridged(bridged):
    rep = packing_report(bridged)
    assert rep.packing_fraction is None and rep.bridges == (6,)
    assert rep.tree_count == 9
