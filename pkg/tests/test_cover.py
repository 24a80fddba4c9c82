import random

import pytest

from topocrystal import ball, base_atom, builtin_graph, cycle_basis, make_atom, translate_atom
from topocrystal.chains import is_cycle, path_chain
from topocrystal.cover import atom_vertex, neighbors
from topocrystal.generators import random_connected
from topocrystal.graph import DisconnectedGraphError, parse_graph
from topocrystal.verify import random_path


def brute_ball(g, r):
    """Atoms reachable in <= r steps, as chain -> depth, via explicit walks."""
    seen = {base_atom(g).chain: 0}
    layer = [base_atom(g)]
    for d in range(1, r + 1):
        nxt = []
        for a in layer:
            for _, b in neighbors(g, a):
                if b.chain not in seen:
                    seen[b.chain] = d
                    nxt.append(b)
        layer = nxt
    return seen


def test_base_atom(theta, k4):
    a = base_atom(theta)
    assert a.chain == (0, 0, 0) and a.vertex == 0
    assert base_atom(k4).chain == (0,) * 6
    assert atom_vertex(a) == 0
    with pytest.raises(DisconnectedGraphError):
        base_atom(parse_graph("v 2\n"))


def test_neighbors(theta, diamond):
    nb = neighbors(theta, base_atom(theta))
    assert [b.chain for _, b in nb] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert {b.vertex for _, b in nb} == {1}
    assert len(neighbors(diamond, base_atom(diamond))) == 4


def test_ball_sizes(theta):
    b = cycle_basis(theta)
    f1 = ball(theta, b, 1)
    assert (len(f1.atoms), len(f1.bonds)) == (4, 3)
    assert len(ball(theta, b, 2).atoms) == 10
    f0 = ball(theta, b, 0)
    assert (len(f0.atoms), len(f0.bonds)) == (1, 0)


def test_ball_matches_brute_force():
    rng = random.Random(8)
    for _ in range(40):
        g = random_connected(rng)
        r = rng.randint(0, 4)
        frag = ball(g, None, r)
        want = brute_ball(g, r)
        assert {a.chain: frag.depth[i] for i, a in enumerate(frag.atoms)} == want


def test_ball_monotone_and_deterministic(k4):
    b = cycle_basis(k4)
    sizes = [len(ball(k4, b, r).atoms) for r in range(5)]
    assert sizes == sorted(sizes)
    assert ball(k4, b, 3).atoms == ball(k4, b, 3).atoms


def test_bonds_stored_once_positive(k4):
    frag = ball(k4, cycle_basis(k4), 3)
    keys = [(b.source.chain, b.edge) for b in frag.bonds]
    assert len(keys) == len(set(keys))
    assert all(b.edge.sign == 1 for b in frag.bonds)
    for b in frag.bonds:
        i, j = frag.bond_ends(b)
        assert frag.atoms[j].chain[b.edge.pair] - frag.atoms[i].chain[b.edge.pair] == 1


def test_translate(theta):
    a = base_atom(theta)
    assert translate_atom(a, (0, 0, 0)) == a
    t = translate_atom(a, (1, -1, 0), theta)
    assert t.chain == (1, -1, 0) and t.vertex == 0
    with pytest.raises(ValueError):
        translate_atom(a, (1, 0, 0), theta)


def test_atom_vertex(theta):
    assert make_atom(theta, (1, 0, 0)).vertex == 1
    with pytest.raises(ValueError):
        make_atom(theta, (2, 0, 0))


def test_fiber_identification():
    rng = random.Random(11)
    for _ in range(30):
        g = random_connected(rng)
        frag = ball(g, None, 3)
        for a in frag.atoms:
            assert (a.vertex == 0) == is_cycle(g, a.chain)


def test_interior_degree_and_free_action():
    rng = random.Random(12)
    for _ in range(30):
        g = random_connected(rng)
        b = cycle_basis(g)
        frag = ball(g, b, 3)
        count = [0] * len(frag.atoms)
        for bond in frag.bonds:
            i, j = frag.bond_ends(bond)
            count[i] += 1
            count[j] += 1
        for i, a in enumerate(frag.atoms):
            if not frag.is_boundary(i):
                assert count[i] == g.degree(a.vertex)
        for col in b.columns:
            for a in frag.atoms[:10]:
                assert translate_atom(a, col) != a


def test_atoms_are_path_classes():
    rng = random.Random(13)
    g = builtin_graph("cube")
    for _ in range(50):
        p = random_path(g, rng, start=0)
        a = make_atom(g, path_chain(g, p))
        assert a.vertex == g.path_end(p)
