import pytest

from topocrystal import Graph, builtin_graph, parse_graph


@pytest.fixture
def theta():
    return builtin_graph("theta")


@pytest.fixture
def k4():
    return builtin_graph("tetrahedron")


@pytest.fixture
def diamond():
    return builtin_graph("diamond")


@pytest.fixture
def bridged():
    # two triangles joined by pair 6
    return parse_graph("v 6\ne 0 1\ne 1 2\ne 2 0\ne 3 4\ne 4 5\ne 5 3\ne 2 3\n", name="barbell")


def small_builtins():
    out = [builtin_graph(n) for n in ("tetrahedron", "cube", "octahedron", "petersen", "theta", "diamond")]
    out += [builtin_graph("hosohedron", n) for n in (2, 5)]
    return out


def all_builtins():
    names = ["tetrahedron", "cube", "octahedron", "cuboctahedron", "dodecahedron", "icosahedron",
             "icosidodecahedron", "petersen", "klein_triangular", "klein_heptagonal", "theta", "diamond"]
    return [builtin_graph(n) for n in names] + [builtin_graph("hosohedron", n) for n in range(2, 9)]


def loop_graph(k=1):
    return Graph(1, ((0, 0),) * k, name="bouquet")


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
