import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from topocrystal import (Automorphism, affine_action, automorphism_generators, automorphisms, ball, base_atom,
                         builtin_graph, canonical_lift, cycle_basis, deck_transformation, group_order,
                         is_arc_transitive, make_atom, translate_atom)
from topocrystal.chains import CycleCoords
from topocrystal.generators import random_connected
from topocrystal.graph import DirectedEdge, parse_graph
from topocrystal.symmetry import (IsometryError, apply_cover_symmetry, compose_symmetries, covering_symmetry,
                                  fixed_vertices, generated_group, inverse_symmetry, is_isometry,
                                  lift_generators, linear_part)
from topocrystal.verify import symmetry_checks

F = Fraction


def brute_automorphism_count(g):
    """All vertex permutations times all signed edge permutations, checked directly."""
    n, m = g.vertex_count, g.edge_count
    count = 0
    for perm in itertools.permutations(range(n)):
        for order in itertools.permutations(range(m)):
            for signs in itertools.product((1, -1), repeat=m):
                ok = True
                for j in range(m):
                    u, w = g.edge_pairs[j]
                    t = g.edge_pairs[order[j]]
                    img = t if signs[j] > 0 else (t[1], t[0])
                    if img != (perm[u], perm[w]):
                        ok = False
                        break
                count += ok
    return count


def test_orders_known():
    assert group_order(builtin_graph("theta")) == 12
    assert group_order(builtin_graph("petersen")) == 120
    assert group_order(builtin_graph("tetrahedron")) == 24
    assert len(automorphisms(builtin_graph("tetrahedron"))) == 24
    for n in range(2, 7):
        assert group_order(builtin_graph("hosohedron", n)) == 2 * math.factorial(n)


@pytest.mark.parametrize("text", [
    "e 0 1\ne 1 0\ne 0 1", "e 0 0\ne 0 1\ne 1 1", "e 0 0\ne 0 0\ne 0 1", "e 0 1\ne 1 2\ne 2 0",
    "e 0 1\ne 1 2\ne 1 2", "e 0 0\ne 0 0",
])
def test_orders_brute_force(text):
    g = parse_graph(text)
    want = brute_automorphism_count(g)
    assert group_order(g) == want
    auts = automorphisms(g)
    assert len(auts) == want and len(set(auts)) == want
    assert all(f.is_valid(g) for f in auts)
    assert len(generated_group(automorphism_generators(g), g)) == want


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_generators_generate(seed):
    g = random_connected(random.Random(seed), max_vertices=6, max_edges=8)
    gens = automorphism_generators(g)
    assert all(f.is_valid(g) for f in gens)
    order = group_order(g)
    if order <= 3000:
        assert len(generated_group(gens, g)) == order


def test_arc_transitive_builtins():
    for name in ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron", "petersen", "theta"):
        assert is_arc_transitive(builtin_graph(name)), name
    assert not is_arc_transitive(parse_graph("e 0 1\ne 1 2"))


def test_automorphism_algebra(theta):
    auts = automorphisms(theta)
    ident = Automorphism.identity(theta)
    for f in auts[:6]:
        assert f.compose(f.inverse()) == ident
        for h in auts[:6]:
            assert f.compose(h).is_valid(theta)


def theta_swap(theta):
    return Automorphism((1, 0), tuple(DirectedEdge(j, -1) for j in range(3)))


def test_canonical_lift_examples(theta):
    b = cycle_basis(theta)
    assert canonical_lift(theta, b, Automorphism.identity(theta)).beta_chain == (0, 0, 0)
    swap = theta_swap(theta)
    assert swap.is_valid(theta)
    s = canonical_lift(theta, b, swap)
    assert s.beta_chain == (1, 0, 0)
    assert s.covers() == swap
    fix = Automorphism((0, 1), (DirectedEdge(1), DirectedEdge(0), DirectedEdge(2)))
    assert canonical_lift(theta, b, fix).beta_chain == (0, 0, 0)


def test_apply_examples(theta):
    b = cycle_basis(theta)
    s = canonical_lift(theta, b, theta_swap(theta))
    a0 = base_atom(theta)
    img = apply_cover_symmetry(s, a0)
    assert img.chain == s.beta_chain and img.vertex == 1
    assert apply_cover_symmetry(s, make_atom(theta, (1, 0, 0))) == a0
    deck = deck_transformation(theta, (1, -1, 0))
    for a in ball(theta, b, 2).atoms:
        assert apply_cover_symmetry(deck, a) == translate_atom(a, (1, -1, 0))


def test_covering_symmetry_validates_beta(theta):
    with pytest.raises(ValueError):
        covering_symmetry(theta, Automorphism.identity(theta), (1, 0, 0))
    with pytest.raises(ValueError):
        deck_transformation(theta, (1, 0, 0))


def test_affine_examples(theta):
    b = cycle_basis(theta)
    ident = affine_action(b, canonical_lift(theta, b, Automorphism.identity(theta)))
    assert ident.linear == ((1, 0), (0, 1)) and ident.translation.is_zero()
    z = (2, -1, -1)
    deck = affine_action(b, deck_transformation(theta, z))
    assert deck.linear == ((1, 0), (0, 1))
    assert deck.translation == b.cycle_coords(z)
    swap = affine_action(b, canonical_lift(theta, b, theta_swap(theta)))
    assert swap.linear == ((-1, 0), (0, -1))
    assert swap.compose(swap).linear == ((1, 0), (0, 1))
    assert is_isometry(b, swap.linear)
    assert swap.translation.values == (F(-1, 3), F(-1, 3))


def test_non_isometry_detected(theta):
    b = cycle_basis(theta)
    assert not is_isometry(b, ((2, 0), (0, 1)))
    from topocrystal.symmetry import CoveringSymmetry
    # not a bijection on edges: collapses the cycle e0 - e1
    bad = CoveringSymmetry(Automorphism((0, 1), (DirectedEdge(0), DirectedEdge(0), DirectedEdge(2))), (0, 0, 0))
    assert not bad.auto.is_valid(theta)
    with pytest.raises(IsometryError):
        affine_action(b, bad)


def test_composition_rules(theta):
    b = cycle_basis(theta)
    s = canonical_lift(theta, b, theta_swap(theta))
    e = compose_symmetries(s, inverse_symmetry(s))
    assert e.auto.is_identity() and not any(e.beta_chain)
    d = compose_symmetries(deck_transformation(theta, (1, -1, 0)), deck_transformation(theta, (1, 0, -1)))
    assert d.auto.is_identity() and d.beta_chain == (2, -1, -1)


def test_affine_homomorphism_random_vectors():
    g = builtin_graph("cube")
    b = cycle_basis(g)
    lifts = lift_generators(g, b)
    rng = random.Random(0)
    for s1, s2 in itertools.product(lifts[:4], lifts[-3:]):
        both = affine_action(b, compose_symmetries(s1, s2))
        a1, a2 = affine_action(b, s1), affine_action(b, s2)
        assert both.linear == a1.compose(a2).linear
        for _ in range(100):
            y = CycleCoords.from_values([F(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(b.rank)])
            assert both(y) == a1(a2(y))


def test_linear_part_integral_and_isometric():
    for name in ("tetrahedron", "cube", "octahedron", "petersen", "diamond"):
        g = builtin_graph(name)
        b = cycle_basis(g)
        for f in automorphism_generators(g):
            F_ = linear_part(b, f)
            assert is_isometry(b, F_)


@pytest.mark.parametrize("name", ["theta", "diamond", "tetrahedron", "cube", "petersen"])
def test_equivariance_radius3(name):
    g = builtin_graph(name)
    b = cycle_basis(g)
    lifts = [canonical_lift(g, b, f) for f in automorphism_generators(g)]
    symmetry_checks(g, b, ball(g, b, 3), lifts, random.Random(0))


def test_equivariance_on_random_multigraphs():
    rng = random.Random(31)
    for _ in range(25):
        g = random_connected(rng, max_vertices=6, max_edges=9)
        b = cycle_basis(g)
        lifts = [canonical_lift(g, b, f) for f in automorphism_generators(g)]
        symmetry_checks(g, b, ball(g, b, 2), lifts, rng)


def test_fixed_vertices():
    star = parse_graph("e 0 1\ne 0 2\ne 0 3")
    assert fixed_vertices(star, automorphism_generators(star)) == [0]
    theta = builtin_graph("theta")
    assert fixed_vertices(theta, automorphism_generators(theta)) == []


def test_deterministic_generators():
    g = builtin_graph("petersen")
    assert automorphism_generators(g) == automorphism_generators(g)
