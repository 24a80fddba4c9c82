"""Chains, boundary maps and the exact projection onto the cycle space.

1-chains are tuples with one coefficient per edge pair (the inverse edge
carries the negated coefficient implicitly); 0-chains are tuples with one
entry per vertex.  Coefficients are ints for integral chains and
``Fraction`` otherwise.

Cycle-space elements are written in the fundamental-cycle basis ``B`` of
a BFS spanning tree rooted at vertex 0.  Inner products go through the
integer Gram matrix ``G = B^T B``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Sequence

from .graph import DirectedEdge, Graph, Path, require_connected
from .linalg import integer_inverse

BASEPOINT = 0

Chain = tuple


def zero_chain(g: Graph) -> Chain:
    return (0,) * g.edge_count


def edge_chain(g: Graph, e: DirectedEdge) -> Chain:
    c = [0] * g.edge_count
    c[e.pair] = e.sign
    return tuple(c)


def add_chains(a: Sequence, b: Sequence) -> Chain:
    return tuple(x + y for x, y in zip(a, b))


def sub_chains(a: Sequence, b: Sequence) -> Chain:
    return tuple(x - y for x, y in zip(a, b))


def scale_chain(k, a: Sequence) -> Chain:
    return tuple(k * x for x in a)


def chain_dot(a: Sequence, b: Sequence):
    """Standard inner product: edges are orthonormal."""
    return sum(x * y for x, y in zip(a, b))


def is_integral(c: Sequence) -> bool:
    return all(isinstance(x, int) or (isinstance(x, Rational) and x.denominator == 1) for x in c)


def boundary(g: Graph, c: Sequence) -> tuple:
    """``∂e = t(e) - s(e)`` extended linearly; self-loops contribute nothing."""
    if len(c) != g.edge_count:
        raise ValueError(f"chain has {len(c)} entries, graph has {g.edge_count} edge pairs")
    out = [0] * g.vertex_count
    for (u, w), x in zip(g.edge_pairs, c):
        if x:
            out[w] += x
            out[u] -= x
    return tuple(out)


def is_cycle(g: Graph, c: Sequence) -> bool:
    return not any(boundary(g, c))


def adjoint_boundary(g: Graph, x: Sequence) -> Chain:
    """Adjoint of ``boundary``: for a vertex, the sum of edges pointing into it."""
    if len(x) != g.vertex_count:
        raise ValueError(f"0-chain has {len(x)} entries, graph has {g.vertex_count} vertices")
    return tuple(x[w] - x[u] for u, w in g.edge_pairs)


def vertex_chain(g: Graph, v: int) -> tuple:
    out = [0] * g.vertex_count
    out[v] = 1
    return tuple(out)


def path_chain(g: Graph, p: Path) -> Chain:
    """``c_γ``: signed count of each edge pair along the path."""
    g.walk(p)
    c = [0] * g.edge_count
    for e in p.edges:
        c[e.pair] += e.sign
    return tuple(c)


def spanning_tree(g: Graph) -> frozenset[int]:
    """Pair ids of the BFS tree from vertex 0, lowest pair id first."""
    return _tree(g)[0]


def _tree(g: Graph) -> tuple[frozenset[int], list[DirectedEdge | None]]:
    require_connected(g)
    parent: list[DirectedEdge | None] = [None] * g.vertex_count
    if g.vertex_count == 0:
        return frozenset(), parent
    seen = [False] * g.vertex_count
    seen[BASEPOINT] = True
    queue = deque([BASEPOINT])
    tree = set()
    while queue:
        v = queue.popleft()
        for e in g.out_edges(v):
            w = g.target(e)
            if not seen[w]:
                seen[w] = True
                parent[w] = e
                tree.add(e.pair)
                queue.append(w)
    return frozenset(tree), parent


@dataclass(frozen=True, eq=False)
class CycleCoords:
    """Exact coordinates ``y`` of a cycle-space element in the basis ``B``.

    Stored as integer numerators over one positive denominator, reduced so
    that equal points have equal representations.
    """

    num: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        num, den = self.num, self.den
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = tuple(-x for x in num), -den
        g = math.gcd(den, *num)
        if g > 1:
            num, den = tuple(x // g for x in num), den // g
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)

    @classmethod
    def from_values(cls, values: Sequence) -> "CycleCoords":
        fr = [Fraction(v) for v in values]
        den = math.lcm(1, *(f.denominator for f in fr))
        return cls(tuple(int(f * den) for f in fr), den)

    @classmethod
    def zero(cls, m: int) -> "CycleCoords":
        return cls((0,) * m, 1)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def __len__(self) -> int:
        return len(self.num)

    def __eq__(self, other):
        if not isinstance(other, CycleCoords):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "CycleCoords") -> "CycleCoords":
        d = self.den * other.den // math.gcd(self.den, other.den)
        a, b = d // self.den, d // other.den
        return CycleCoords(tuple(a * x + b * y for x, y in zip(self.num, other.num)), d)

    def __neg__(self) -> "CycleCoords":
        return CycleCoords(tuple(-x for x in self.num), self.den)

    def __sub__(self, other: "CycleCoords") -> "CycleCoords":
        return self + (-other)

    def scale(self, k) -> "CycleCoords":
        k = Fraction(k)
        return CycleCoords(tuple(x * k.numerator for x in self.num), self.den * k.denominator)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_lattice_point(self) -> bool:
        """Integer coordinates, i.e. an integral cycle."""
        return self.den == 1

    def residue(self) -> "CycleCoords":
        """Fractional parts, the canonical representative modulo ``Z^m``."""
        return CycleCoords(tuple(x % self.den for x in self.num), self.den)

    def __repr__(self) -> str:
        return "CycleCoords(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True, eq=False)
class CycleBasis:
    """Fundamental-cycle basis of ``Z_1(X, Z)`` and its Gram data.

    Attributes:
        graph: the base graph.
        tree_edges: pair ids of the BFS spanning tree.
        tree_parent: for each vertex, the tree edge arriving at it (None at the root).
        non_tree: pair ids of the chords, one basis column each, increasing.
        columns: the basis cycles as integral 1-chains.
        gram: ``G = B^T B``.
        det: ``det G``.
        adjugate: integer matrix with ``G^{-1} = adjugate / det``.
    """

    graph: Graph
    tree_edges: frozenset[int]
    tree_parent: tuple[DirectedEdge | None, ...]
    non_tree: tuple[int, ...]
    columns: tuple[Chain, ...]
    gram: tuple[tuple[int, ...], ...]
    det: int
    adjugate: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.non_tree)

    @property
    def gram_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(x, self.det) for x in row) for row in self.adjugate)

    @cached_property
    def _edge_rows(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        # B as rows: for each edge pair the (column, coefficient) nonzeros
        rows: list[list[tuple[int, int]]] = [[] for _ in range(self.graph.edge_count)]
        for k, col in enumerate(self.columns):
            for j, x in enumerate(col):
                if x:
                    rows[j].append((k, x))
        return tuple(tuple(r) for r in rows)

    @cached_property
    def edge_projections(self) -> tuple[tuple[int, ...], ...]:
        """Numerators of ``π(e_j)`` over ``det``, one vector per edge pair."""
        m = self.rank
        out = []
        for row in self._edge_rows:
            vec = [0] * m
            for k, x in row:
                adj_col = self.adjugate
                for i in range(m):
                    vec[i] += adj_col[i][k] * x
            out.append(tuple(vec))
        return tuple(out)

    def tree_path(self, v: int) -> Path:
        """The spanning-tree path from the basepoint to ``v``."""
        edges = []
        while self.tree_parent[v] is not None:
            e = self.tree_parent[v]
            edges.append(e)
            v = self.graph.source(e)
        return Path(BASEPOINT, tuple(reversed(edges)))

    def tree_chain(self, v: int) -> Chain:
        c = [0] * self.graph.edge_count
        while self.tree_parent[v] is not None:
            e = self.tree_parent[v]
            c[e.pair] += e.sign
            v = self.graph.source(e)
        return tuple(c)

    def cycle_coords(self, z: Sequence) -> CycleCoords:
        """Basis coordinates of a cycle, read off its chord entries.

        Raises:
            ValueError: if ``z`` is not a cycle.
        """
        if any(boundary(self.graph, z)):
            raise ValueError("chain is not a cycle")
        return CycleCoords.from_values([z[j] for j in self.non_tree])

    def chain_of(self, y: CycleCoords) -> Chain:
        """The ambient 1-chain ``B y``."""
        vals = y.values
        out = [Fraction(0)] * self.graph.edge_count
        for k, col in enumerate(self.columns):
            if vals[k]:
                for j, x in enumerate(col):
                    if x:
                        out[j] += x * vals[k]
        return tuple(int(v) if v.denominator == 1 else v for v in out)


def cycle_basis(g: Graph) -> CycleBasis:
    """Fundamental cycles of the BFS spanning tree, with Gram matrix and inverse.

    For a chord ``e: w -> z`` the column is ``e`` plus the tree path from
    ``z`` back to ``w``.
    """
    tree, parent = _tree(g)
    basis = CycleBasis(g, tree, tuple(parent), (), (), (), 1, ())
    non_tree = tuple(j for j in range(g.edge_count) if j not in tree)
    columns = []
    for j in non_tree:
        w, z = g.edge_pairs[j]
        col = list(sub_chains(basis.tree_chain(w), basis.tree_chain(z)))
        col[j] += 1
        columns.append(tuple(col))
    gram = tuple(tuple(chain_dot(a, b) for b in columns) for a in columns)
    det, adj = integer_inverse(gram)
    return CycleBasis(g, tree, tuple(parent), non_tree, tuple(columns), gram, det,
                      tuple(tuple(r) for r in adj))


def project(basis: CycleBasis, c: Sequence) -> CycleCoords:
    """Coordinates ``y = G^{-1} B^T c`` of the orthogonal projection ``π(c)``."""
    if len(c) != basis.graph.edge_count:
        raise ValueError(f"chain has {len(c)} entries, graph has {basis.graph.edge_count} edge pairs")
    m = basis.rank
    den = 1
    if not all(isinstance(x, int) for x in c):
        fr = [Fraction(x) for x in c]
        den = math.lcm(1, *(f.denominator for f in fr))
        c = [int(f * den) for f in fr]
    vec = [0] * m
    for x, pe in zip(c, basis.edge_projections):
        if x:
            for i in range(m):
                vec[i] += x * pe[i]
    return CycleCoords(tuple(vec), basis.det * den)


def inner_product(basis: CycleBasis, y1: CycleCoords, y2: CycleCoords) -> Fraction:
    """``y1^T G y2``."""
    m = basis.rank
    if len(y1) != m or len(y2) != m:
        raise ValueError(f"expected coordinate vectors of length {m}")
    g = basis.gram
    total = 0
    for i, a in enumerate(y1.num):
        if a:
            row = g[i]
            total += a * sum(row[k] * b for k, b in enumerate(y2.num))
    return Fraction(total, y1.den * y2.den)


def norm_sq(basis: CycleBasis, y: CycleCoords) -> Fraction:
    return inner_product(basis, y, y)

