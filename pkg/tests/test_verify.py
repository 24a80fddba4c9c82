import random

import pytest

from topocrystal import builtin_graph, parse_graph
from topocrystal.generators import random_bridgeless, random_with_bridge
from topocrystal.graph import DisconnectedGraphError
from topocrystal.verify import bridge_collision, verify_suite


def test_theta_all_pass(theta):
    rep = verify_suite(theta, 3, samples=100)
    assert rep.ok, [c.line() for c in rep.failures()]
    names = {c.name for c in rep.checks}
    assert {"injectivity", "symmetry", "kernel", "packing", "decomposition", "witness"} <= names


def test_bridged_passes_without_claiming_injectivity(bridged):
    rep = verify_suite(bridged, 2, samples=50)
    assert rep.ok
    inj = next(c for c in rep.checks if c.name == "injectivity")
    assert "collision" in inj.detail
    wit = next(c for c in rep.checks if c.name == "witness")
    assert "bridge" in wit.detail


def test_disconnected_rejected():
    with pytest.raises(DisconnectedGraphError):
        verify_suite(parse_graph("v 2\n"), 1)


def test_bridge_collision_helper(bridged, theta):
    a, b = bridge_collision(bridged, __import__("topocrystal").cycle_basis(bridged))
    assert a != b and a.chain[6] + 1 == b.chain[6]
    assert bridge_collision(theta, __import__("topocrystal").cycle_basis(theta)) is None


def test_random_graphs_pass():
    rng = random.Random(77)
    for i in range(20):
        g = random_bridgeless(rng) if i % 2 else random_with_bridge(rng)
        rep = verify_suite(g, 2, samples=20, seed=i)
        assert rep.ok, [c.line() for c in rep.failures()]


def test_report_is_deterministic():
    g = builtin_graph("cube")
    assert verify_suite(g, 2, samples=30, seed=4).as_dict() == verify_suite(g, 2, samples=30, seed=4).as_dict()


def test_failure_carries_counterexample(monkeypatch, theta):
    import topocrystal.verify as v

    def broken(g, p):
        if len(p.edges) >= 2:
            raise v._Fail("injected", extra=1)

    monkeypatch.setattr(v, "check_decomposition", broken)
    rep = verify_suite(theta, 1, samples=30)
    assert not rep.ok
    (fail,) = rep.failures()
    cx = fail.counterexample
    assert cx["graph"].startswith("v 2")
    assert "path" in cx and len(cx["path"].split()) >= 2
    assert cx["extra"] == "1"
