"""Random multigraphs for property checks.

Bridgeless graphs are grown by ear decomposition, which reaches every
2-edge-connected multigraph.  Graphs with a bridge are two random pieces
joined by a single edge.  Vertex labels, edge order and orientations are
shuffled so the basepoint lands anywhere.
"""

from __future__ import annotations

import random

from .graph import Graph, find_bridges, is_connected


def _shuffle(rng: random.Random, n: int, pairs: list[tuple[int, int]], name: str) -> Graph:
    relabel = list(range(n))
    rng.shuffle(relabel)
    out = [(relabel[u], relabel[w]) for u, w in pairs]
    out = [(w, u) if rng.random() < 0.5 else (u, w) for u, w in out]
    rng.shuffle(out)
    return Graph(n, tuple(out), name=name)


def _ears(rng: random.Random, n: int, max_edges: int, allow_loops: bool) -> list[tuple[int, int]]:
    if n == 1 and not allow_loops:
        return []
    # initial cycle on k vertices (k = 1 is a self-loop, k = 2 a double edge)
    k = rng.randint(1 if allow_loops else 2, n)
    pairs = [(i, (i + 1) % k) for i in range(k)] if k > 1 else [(0, 0)]
    if k == 2:
        pairs = [(0, 1), (1, 0)]
    used = k
    while used < n:
        length = rng.randint(1, n - used)
        a, b = rng.randrange(used), rng.randrange(used)
        chain = [a] + list(range(used, used + length)) + [b]
        pairs.extend(zip(chain, chain[1:]))
        used += length
    budget = max_edges - len(pairs)
    for _ in range(rng.randint(0, max(budget, 0))):
        u, w = rng.randrange(n), rng.randrange(n)
        if u == w and not allow_loops:
            continue
        pairs.append((u, w))
    return pairs


def random_bridgeless(rng: random.Random, max_vertices: int = 8, max_edges: int = 14,
                      allow_loops: bool = True) -> Graph:
    n = rng.randint(1, max_vertices)
    # a cycle through all n vertices needs n edges; leave room for the ears
    while True:
        pairs = _ears(rng, n, max_edges, allow_loops)
        if len(pairs) <= max_edges:
            break
    g = _shuffle(rng, n, pairs, "random-bridgeless")
    assert is_connected(g) and not find_bridges(g)
    return g


def random_with_bridge(rng: random.Random, max_vertices: int = 8, max_edges: int = 14) -> Graph:
    n = rng.randint(2, max_vertices)
    left = rng.randint(1, n - 1)
    right = n - left
    while True:
        pairs = []
        for size, offset in ((left, 0), (right, left)):
            if size == 1 or rng.random() < 0.3:
                # a path or single vertex: every edge a bridge
                pairs.extend((offset + i, offset + i + 1) for i in range(size - 1))
                if size == 1 and rng.random() < 0.5:
                    pairs.append((offset, offset))
            else:
                part = _ears(rng, size, max_edges // 2, True)
                pairs.extend((u + offset, w + offset) for u, w in part)
        pairs.append((rng.randrange(left), left + rng.randrange(right)))
        if len(pairs) <= max_edges:
            break
    g = _shuffle(rng, n, pairs, "random-bridged")
    assert is_connected(g) and find_bridges(g)
    return g


def random_connected(rng: random.Random, max_vertices: int = 8, max_edges: int = 14) -> Graph:
    """Random spanning tree plus random extra edges (loops and parallels allowed)."""
    n = rng.randint(1, max_vertices)
    pairs = [(rng.randrange(i), i) for i in range(1, n)]
    for _ in range(rng.randint(0, max_edges - len(pairs))):
        pairs.append((rng.randrange(n), rng.randrange(n)))
    return _shuffle(rng, n, pairs, "random-connected")
