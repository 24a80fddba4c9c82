"""Bundled graphs: Platonic 1-skeleta, hosohedra, Petersen and the Klein quartic tilings."""

from __future__ import annotations

from importlib import resources
from itertools import combinations

from .graph import Graph, GraphError, from_pairs, parse_graph

BUILTIN_NAMES = (
    "tetrahedron", "cube", "octahedron", "cuboctahedron", "dodecahedron",
    "icosahedron", "icosidodecahedron", "hosohedron", "petersen",
    "klein_triangular", "klein_heptagonal", "theta", "diamond",
)


def _data(name: str) -> Graph:
    text = resources.files("topocrystal").joinpath("data").joinpath(f"{name}.txt").read_text("utf-8")
    return parse_graph(text, name=name)


def _line_graph(g: Graph, name: str) -> Graph:
    # vertices are the edges of g; adjacent when they share an endpoint
    pairs = [
        (i, j)
        for i, j in combinations(range(g.edge_count), 2)
        if set(g.edge_pairs[i]) & set(g.edge_pairs[j])
    ]
    return Graph(g.edge_count, tuple(pairs), name=name)


def tetrahedron() -> Graph:
    return from_pairs(combinations(range(4), 2), 4, name="tetrahedron")


def cube() -> Graph:
    pairs = [(i, j) for i, j in combinations(range(8), 2) if bin(i ^ j).count("1") == 1]
    return from_pairs(pairs, 8, name="cube")


def octahedron() -> Graph:
    # vertices 2k, 2k+1 are antipodal
    pairs = [(i, j) for i, j in combinations(range(6), 2) if i // 2 != j // 2]
    return from_pairs(pairs, 6, name="octahedron")


def hosohedron(n: int) -> Graph:
    if n < 2:
        raise GraphError("hosohedron needs n >= 2")
    return Graph(2, ((0, 1),) * n, name=f"hosohedron:{n}")


def petersen() -> Graph:
    subsets = list(combinations(range(5), 2))
    pairs = [(i, j) for i, j in combinations(range(10), 2) if not set(subsets[i]) & set(subsets[j])]
    labels = tuple(f"{a}{b}" for a, b in subsets)
    return Graph(10, tuple(pairs), labels=labels, name="petersen")


def builtin_graph(name: str, n: int | None = None) -> Graph:
    """Look up a bundled graph by name.

    ``theta`` is ``hosohedron(3)`` and ``diamond`` is ``hosohedron(4)``.

    Raises:
        GraphError: unknown name, or ``hosohedron`` without ``n``.
    """
    if name == "hosohedron":
        if n is None:
            raise GraphError("hosohedron requires n (e.g. hosohedron:6)")
        return hosohedron(n)
    if n is not None:
        raise GraphError(f"{name} takes no size parameter")
    if name == "theta":
        return Graph(2, ((0, 1),) * 3, name="theta")
    if name == "diamond":
        return Graph(2, ((0, 1),) * 4, name="diamond")
    if name == "tetrahedron":
        return tetrahedron()
    if name == "cube":
        return cube()
    if name == "octahedron":
        return octahedron()
    if name == "cuboctahedron":
        return _line_graph(cube(), "cuboctahedron")
    if name == "icosidodecahedron":
        return _line_graph(_data("dodecahedron"), "icosidodecahedron")
    if name == "petersen":
        return petersen()
    if name in ("dodecahedron", "icosahedron", "klein_triangular", "klein_heptagonal"):
        return _data(name)
    raise GraphError(f"unknown builtin graph {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def parse_builtin_spec(spec: str) -> Graph:
    """``name`` or ``name:n`` as used on the command line."""
    name, _, arg = spec.partition(":")
    n = None
    if arg:
        try:
            n = int(arg)
        except ValueError:
            raise GraphError(f"bad size parameter in {spec!r}") from None
    return builtin_graph(name, n)
