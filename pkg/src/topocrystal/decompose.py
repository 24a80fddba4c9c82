"""Splitting path chains into a simple path plus simple loops, and building
a cycle that pairs positively with a given nonzero path chain.

Wherever a choice of edge is free the lowest pair id wins, stored
orientation before inverse, so every output is reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .chains import add_chains, chain_dot, is_integral, is_cycle, path_chain, sub_chains
from .graph import DirectedEdge, Graph, GraphError, Path


class BridgeError(GraphError):
    """The requested construction is blocked by a bridge."""

    def __init__(self, pair: int, message: str | None = None):
        self.pair = pair
        super().__init__(message or f"edge pair {pair} is a bridge")


@dataclass(frozen=True)
class LoopDecomposition:
    simple_loops: tuple[Path, ...]
    simple_path: Path | None = None


def in_support(c: Sequence, e: DirectedEdge) -> bool:
    return c[e.pair] * e.sign > 0


def support_contained(part: Sequence, whole: Sequence) -> bool:
    """``supp(part) ⊆ supp(whole)``: no new edges and no sign flips."""
    for p, w in zip(part, whole):
        if w == 0 and p != 0:
            return False
        if p * w < 0:
            return False
    return True


def is_simple_path(g: Graph, p: Path) -> bool:
    verts = g.walk(p)
    return len(set(verts)) == len(verts)


def is_simple_loop(g: Graph, p: Path) -> bool:
    """A nonempty loop visiting its base twice (at the ends), every other vertex
    at most once, and no edge pair twice (so ``e e^{-1}`` does not count)."""
    verts = g.walk(p)
    if not p.edges or verts[0] != verts[-1]:
        return False
    if len({e.pair for e in p.edges}) != len(p.edges):
        return False
    inner = verts[1:]
    return len(set(inner)) == len(inner)


def _pick(g: Graph, c: Sequence, v: int) -> DirectedEdge | None:
    # stored-orientation edges first, each group by pair id
    best = None
    for e in g.out_edges(v):
        if in_support(c, e):
            if e.sign > 0:
                return e
            if best is None:
                best = e
    return best


def _first_support_edge(c: Sequence) -> DirectedEdge:
    for j, x in enumerate(c):
        if x > 0:
            return DirectedEdge(j, 1)
    for j, x in enumerate(c):
        if x < 0:
            return DirectedEdge(j, -1)
    raise ValueError("empty support")


def _peel_loop(g: Graph, c: Sequence, start_edge: DirectedEdge) -> Path:
    verts = [g.source(start_edge)]
    edges = [start_edge]
    index = {verts[0]: 0}
    v = g.target(start_edge)
    while v not in index:
        index[v] = len(verts)
        verts.append(v)
        e = _pick(g, c, v)
        if e is None:
            raise ValueError(f"walk stuck at vertex {v}; chain is not a cycle")
        edges.append(e)
        v = g.target(e)
    j = index[v]
    return Path(v, tuple(edges[j:]))


def decompose_cycle(g: Graph, c: Sequence[int]) -> LoopDecomposition:
    """Write an integral cycle as a sum of simple-loop chains inside its support.

    The zero cycle gives an empty list.

    Raises:
        ValueError: non-integral input or nonzero boundary.
    """
    if len(c) != g.edge_count:
        raise ValueError("chain length does not match the graph")
    if not is_integral(c):
        raise ValueError("chain is not integral")
    if not is_cycle(g, c):
        raise ValueError("chain has nonzero boundary")
    rest = tuple(int(x) for x in c)
    loops = []
    while any(rest):
        loop = _peel_loop(g, rest, _first_support_edge(rest))
        loops.append(loop)
        rest = sub_chains(rest, path_chain(g, loop))
    return LoopDecomposition(tuple(loops))


def decompose_path_chain(g: Graph, p: Path) -> LoopDecomposition:
    """Split ``c_p`` into a simple path with the same endpoints plus simple loops.

    All parts have support inside ``supp(c_p)`` and their chains add up to
    ``c_p`` exactly.  For a closed path the simple path is trivial.
    """
    verts = g.walk(p)
    x, y = verts[0], verts[-1]
    cp = path_chain(g, p)
    if x == y:
        return LoopDecomposition(decompose_cycle(g, cp).simple_loops, Path(x))
    ck = cp
    while True:
        edges: list[DirectedEdge] = []
        index = {x: 0}
        v = x
        loop = None
        while v != y:
            e = _pick(g, ck, v)
            if e is None:
                raise AssertionError("support walk stuck; boundary bookkeeping is broken")
            edges.append(e)
            v = g.target(e)
            if v in index:
                loop = Path(v, tuple(edges[index[v]:]))
                break
            index[v] = len(edges)
        if loop is None:
            delta = Path(x, tuple(edges))
            break
        ck = sub_chains(ck, path_chain(g, loop))
    remainder = sub_chains(cp, path_chain(g, delta))
    return LoopDecomposition(decompose_cycle(g, remainder).simple_loops, delta)


def _bfs_to_set(g: Graph, start: int, targets: set[int], banned_pair: int) -> list[DirectedEdge] | None:
    """Shortest edge list from ``start`` to the first vertex of ``targets``, avoiding one pair."""
    prev: dict[int, DirectedEdge | None] = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in g.out_edges(v):
            if e.pair == banned_pair:
                continue
            w = g.target(e)
            if w in prev:
                continue
            prev[w] = e
            if w in targets:
                out = []
                while prev[w] is not None:
                    out.append(prev[w])
                    w = g.source(prev[w])
                return out[::-1]
            queue.append(w)
    return None


def witness_cycle(g: Graph, p: Path) -> tuple[int, ...]:
    """An integral cycle ``z`` with ``<z, c_p> >= 1``.

    If the decomposition of ``c_p`` has a loop, that loop's chain works.
    Otherwise ``c_p`` is the chain of a simple path ``e_1 ... e_n``; a
    detour from its end that avoids ``e_n`` and stops at the first earlier
    path vertex, followed by the tail of the path, closes a loop.

    Raises:
        ValueError: if ``c_p`` is zero.
        BridgeError: if the detour does not exist because ``e_n`` is a bridge.
    """
    cp = path_chain(g, p)
    if not any(cp):
        raise ValueError("path chain is zero; no witness exists")
    dec = decompose_path_chain(g, p)
    for loop in dec.simple_loops:
        z = path_chain(g, loop)
        if any(z):
            return z
    delta = dec.simple_path
    verts = g.walk(delta)
    last = delta.edges[-1]
    earlier = set(verts[:-1])
    detour = _bfs_to_set(g, verts[-1], earlier, last.pair)
    if detour is None:
        raise BridgeError(last.pair, f"edge pair {last.pair} is a bridge; c_p is orthogonal to every cycle")
    alpha = Path(verts[-1], tuple(detour))
    vi = g.path_end(alpha)
    i = verts.index(vi)
    beta = Path(vi, delta.edges[i:])
    z = add_chains(path_chain(g, alpha), path_chain(g, beta))
    assert chain_dot(z, cp) >= 1
    return z
