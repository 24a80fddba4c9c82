"""Finite multigraphs with an explicit edge-inverse involution.

A graph stores one orientation representative ``(source, target)`` per
undirected bond.  A directed edge is a ``(pair, sign)`` couple: sign ``+1``
is the stored orientation, ``-1`` its inverse.  Parallel edges and
self-loops are allowed.  Edge order is input order and everything
downstream (cycle bases, coordinates) depends on it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Malformed graph input or a graph violating a precondition."""


class GraphFormatError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class InvalidPathError(GraphError):
    pass


@dataclass(frozen=True, order=True)
class DirectedEdge:
    pair: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    def inverse(self) -> "DirectedEdge":
        return DirectedEdge(self.pair, -self.sign)

    def __neg__(self) -> "DirectedEdge":
        return self.inverse()

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.pair}"

    @classmethod
    def parse(cls, token: str) -> "DirectedEdge":
        """Parse ``+3`` / ``-3`` / ``3`` into a directed edge."""
        token = token.strip()
        sign = 1
        if token[:1] in "+-":
            sign = -1 if token[0] == "-" else 1
            token = token[1:]
        if not token.isdigit():
            raise ValueError(f"bad edge token {token!r}")
        return cls(int(token), sign)


@dataclass(frozen=True)
class Path:
    """A word of directed edges starting at ``start``; may be empty."""

    start: int
    edges: tuple[DirectedEdge, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    def inverse(self, g: "Graph") -> "Path":
        return Path(g.walk(self)[-1], tuple(e.inverse() for e in reversed(self.edges)))

    def then(self, other: "Path") -> "Path":
        return Path(self.start, self.edges + other.edges)

    def word(self) -> str:
        return " ".join(str(e) for e in self.edges)

    @classmethod
    def parse(cls, start: int, word: str) -> "Path":
        return cls(start, tuple(DirectedEdge.parse(t) for t in word.split()))


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edge_pairs: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edge_pairs", tuple((int(u), int(w)) for u, w in self.edge_pairs))
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        for j, (u, w) in enumerate(self.edge_pairs):
            if not (0 <= u < self.vertex_count and 0 <= w < self.vertex_count):
                raise GraphError(f"edge {j} = ({u}, {w}) has an endpoint outside 0..{self.vertex_count - 1}")
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise GraphError("labels must have one entry per vertex")

    @property
    def edge_count(self) -> int:
        return len(self.edge_pairs)

    def source(self, e: DirectedEdge) -> int:
        u, w = self.edge_pairs[e.pair]
        return u if e.sign > 0 else w

    def target(self, e: DirectedEdge) -> int:
        u, w = self.edge_pairs[e.pair]
        return w if e.sign > 0 else u

    def directed_edges(self) -> Iterator[DirectedEdge]:
        for j in range(self.edge_count):
            yield DirectedEdge(j, 1)
            yield DirectedEdge(j, -1)

    @cached_property
    def _out(self) -> tuple[tuple[DirectedEdge, ...], ...]:
        out: list[list[DirectedEdge]] = [[] for _ in range(self.vertex_count)]
        for j, (u, w) in enumerate(self.edge_pairs):
            out[u].append(DirectedEdge(j, 1))
            out[w].append(DirectedEdge(j, -1))
        return tuple(tuple(lst) for lst in out)

    def out_edges(self, v: int) -> tuple[DirectedEdge, ...]:
        """Directed edges with source ``v``, ordered by pair id (``+`` first)."""
        return self._out[v]

    def degree(self, v: int) -> int:
        return len(self._out[v])

    def walk(self, p: Path) -> list[int]:
        """Vertex sequence visited by ``p``.

        Raises:
            InvalidPathError: if consecutive edges do not compose.
        """
        if not 0 <= p.start < self.vertex_count:
            raise InvalidPathError(f"start vertex {p.start} out of range")
        verts = [p.start]
        for k, e in enumerate(p.edges):
            if not 0 <= e.pair < self.edge_count:
                raise InvalidPathError(f"step {k}: no edge pair {e.pair}")
            if self.source(e) != verts[-1]:
                raise InvalidPathError(
                    f"step {k}: edge {e} starts at {self.source(e)}, path is at {verts[-1]}")
            verts.append(self.target(e))
        return verts

    def path_end(self, p: Path) -> int:
        return self.walk(p)[-1]

    def without_pair(self, pair: int) -> "Graph":
        pairs = self.edge_pairs[:pair] + self.edge_pairs[pair + 1:]
        return Graph(self.vertex_count, pairs)

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<Graph{tag} |V|={self.vertex_count} |E|={self.edge_count}>"


def parse_graph(text: bytes | str, name: str = "") -> Graph:
    """Parse the ``v``/``e`` edge-list format.

    Lines are ``# comment``, an optional ``v <count>`` header and
    ``e <u> <w>`` edges with 0-based ids.  Without a header the vertex count
    is one more than the largest id.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    declared: int | None = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer field in {raw!r}") from None
        if any(x < 0 for x in nums):
            raise GraphFormatError(f"line {lineno}: negative id in {raw!r}")
        if parts[0] == "v" and len(nums) == 1:
            if declared is not None:
                raise GraphFormatError(f"line {lineno}: duplicate 'v' header")
            declared = nums[0]
        elif parts[0] == "e" and len(nums) == 2:
            pairs.append((nums[0], nums[1]))
        else:
            raise GraphFormatError(f"line {lineno}: malformed line {raw!r}")
    top = max((max(p) for p in pairs), default=-1)
    if declared is None:
        count = top + 1
    else:
        if top >= declared:
            raise GraphFormatError(f"vertex id {top} out of declared range 0..{declared - 1}")
        count = declared
    return Graph(count, tuple(pairs), name=name)


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"v {g.vertex_count}")
    lines.extend(f"e {u} {w}" for u, w in g.edge_pairs)
    return "\n".join(lines) + "\n"


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.vertex_count
    comps = []
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for e in g.out_edges(v):
                w = g.target(e)
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(f"graph with {len(components(g))} components is not connected")


def find_bridges(g: Graph) -> set[int]:
    """Pair ids of all bridges.

    Iterative DFS low-link.  The walk refuses to go back along the *pair*
    it arrived by (rather than to the parent vertex), so a parallel copy of
    the tree edge counts as a back edge and is never a bridge.
    """
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    bridges: set[int] = set()
    clock = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        # frames: (vertex, pair used to enter, iterator over out edges)
        stack = [(root, -1, iter(g.out_edges(root)))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e in it:
                if e.pair == via:
                    continue
                w = g.target(e)
                if disc[w] < 0:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e.pair, iter(g.out_edges(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges.add(via)
    return bridges


def euler_data(g: Graph) -> tuple[int, int, int]:
    """``(|V|, |E|, cycle_rank)`` of a connected graph."""
    require_connected(g)
    return g.vertex_count, g.edge_count, g.edge_count - g.vertex_count + 1


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for e in g.out_edges(v):
            w = g.target(e)
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def diameter(g: Graph) -> int:
    require_connected(g)
    return max((max(bfs_distances(g, v)) for v in range(g.vertex_count)), default=0)


def from_pairs(pairs: Iterable[Sequence[int]], vertex_count: int | None = None, name: str = "") -> Graph:
    pairs = tuple((int(u), int(w)) for u, w in pairs)
    if vertex_count is None:
        vertex_count = 1 + max((max(p) for p in pairs), default=-1)
    return Graph(vertex_count, pairs, name=name)
