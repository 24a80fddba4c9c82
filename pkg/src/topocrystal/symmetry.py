"""Graph automorphisms, their lifts to the abelian cover, and the induced
affine isometries of cycle space.

A covering symmetry is a pair ``(f, beta)``: an automorphism ``f`` of the
base graph and the chain of a path from the basepoint to ``f(x0)``.  It
sends the atom with chain ``c`` to the atom with chain ``beta + f_*(c)``.
The group of covering symmetries is infinite; it is handled through
generators (lifted automorphism generators plus translations).
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

from .chains import BASEPOINT, CycleBasis, CycleCoords, add_chains, boundary, project
from .cover import Atom
from .graph import DirectedEdge, Graph, GraphError

MAX_VERTICES = 64


class IsometryError(AssertionError):
    """An induced linear map failed ``F^T G F = G``."""


@dataclass(frozen=True)
class Automorphism:
    vertex_perm: tuple[int, ...]
    edge_map: tuple[DirectedEdge, ...]

    def vertex(self, v: int) -> int:
        return self.vertex_perm[v]

    def edge(self, e: DirectedEdge) -> DirectedEdge:
        img = self.edge_map[e.pair]
        return img if e.sign > 0 else img.inverse()

    def push(self, c: Sequence) -> tuple:
        """``f_*`` on 1-chains."""
        out = [0] * len(c)
        for j, x in enumerate(c):
            if x:
                img = self.edge_map[j]
                out[img.pair] += img.sign * x
        return tuple(out)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self ∘ other`` (apply ``other`` first)."""
        verts = tuple(self.vertex_perm[v] for v in other.vertex_perm)
        edges = tuple(self.edge(e) for e in other.edge_map)
        return Automorphism(verts, edges)

    def inverse(self) -> "Automorphism":
        verts = [0] * len(self.vertex_perm)
        for v, w in enumerate(self.vertex_perm):
            verts[w] = v
        edges: list[DirectedEdge | None] = [None] * len(self.edge_map)
        for j, img in enumerate(self.edge_map):
            edges[img.pair] = DirectedEdge(j, img.sign)
        return Automorphism(tuple(verts), tuple(edges))

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.vertex_perm)) and all(
            e.pair == j and e.sign > 0 for j, e in enumerate(self.edge_map))

    @classmethod
    def identity(cls, g: Graph) -> "Automorphism":
        return cls(tuple(range(g.vertex_count)), tuple(DirectedEdge(j) for j in range(g.edge_count)))

    def is_valid(self, g: Graph) -> bool:
        if sorted(self.vertex_perm) != list(range(g.vertex_count)):
            return False
        if sorted(e.pair for e in self.edge_map) != list(range(g.edge_count)):
            return False
        for j in range(g.edge_count):
            e = DirectedEdge(j)
            img = self.edge(e)
            if g.source(img) != self.vertex(g.source(e)) or g.target(img) != self.vertex(g.target(e)):
                return False
        return True


# ---------------------------------------------------------------- search

def _multiplicities(g: Graph):
    mult: dict[tuple[int, int], int] = defaultdict(int)
    loops = [0] * g.vertex_count
    nbrs: list[set[int]] = [set() for _ in range(g.vertex_count)]
    for u, w in g.edge_pairs:
        if u == w:
            loops[u] += 1
        else:
            mult[(u, w)] += 1
            mult[(w, u)] += 1
            nbrs[u].add(w)
            nbrs[w].add(u)
    return mult, loops, nbrs


def _search_order(g: Graph, nbrs) -> list[int]:
    order: list[int] = []
    seen = [False] * g.vertex_count
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(nbrs[v]):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def vertex_automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All vertex permutations preserving edge multiplicities and loop counts.

    Backtracking in BFS order; each new vertex must land next to the image
    of an already-placed neighbour, with matching multiplicities to every
    placed vertex.

    Raises:
        GraphError: more than ``MAX_VERTICES`` vertices.
    """
    n = g.vertex_count
    if n > MAX_VERTICES:
        raise GraphError(f"automorphism search is limited to {MAX_VERTICES} vertices (got {n})")
    mult, loops, nbrs = _multiplicities(g)
    # cheap invariant: degree, loops, sorted neighbour degrees
    deg = [g.degree(v) for v in range(n)]
    label = [(deg[v], loops[v], tuple(sorted((deg[w], mult[(v, w)]) for w in nbrs[v]))) for v in range(n)]
    order = _search_order(g, nbrs)
    pos = {v: i for i, v in enumerate(order)}
    # earlier neighbours of each vertex in search order
    anchors = [sorted((w for w in nbrs[v] if pos[w] < pos[v]), key=pos.get) for v in order]
    result: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def fits(v: int, c: int, placed_nbrs: list[int]) -> bool:
        if label[c] != label[v] or used[c]:
            return False
        for w in placed_nbrs:
            if mult.get((c, image[w]), 0) != mult[(v, w)]:
                return False
        # c must have no extra edges into already-used images
        count = sum(1 for x in nbrs[c] if used[x])
        return count == len(placed_nbrs)

    def rec(k: int) -> None:
        if k == n:
            result.append(tuple(image))
            return
        v = order[k]
        placed = anchors[k]
        if placed:
            candidates = sorted(nbrs[image[placed[0]]])
        else:
            candidates = range(n)
        for c in candidates:
            if fits(v, c, placed):
                image[v] = c
                used[c] = True
                rec(k + 1)
                used[c] = False
                image[v] = -1

    rec(0)
    return result


def _edge_blocks(g: Graph):
    blocks: dict[tuple[int, int], list[int]] = defaultdict(list)
    for j, (u, w) in enumerate(g.edge_pairs):
        blocks[(min(u, w), max(u, w))].append(j)
    return blocks


def _edge_choices(g: Graph, perm: Sequence[int], blocks) -> Iterator[tuple[DirectedEdge, ...]]:
    """Every edge map over a vertex permutation, in a fixed order."""
    per_block = []
    for (u, w), members in sorted(blocks.items()):
        key = (min(perm[u], perm[w]), max(perm[u], perm[w]))
        targets = blocks[key]
        options = []
        for arrangement in permutations(targets):
            if u == w:
                for signs in product((1, -1), repeat=len(members)):
                    options.append([(j, DirectedEdge(t, s)) for j, t, s in zip(members, arrangement, signs)])
            else:
                opt = []
                for j, t in zip(members, arrangement):
                    s = 1 if g.edge_pairs[t][0] == perm[g.edge_pairs[j][0]] else -1
                    opt.append((j, DirectedEdge(t, s)))
                options.append(opt)
        per_block.append(options)
    for combo in product(*per_block):
        edge_map: list[DirectedEdge | None] = [None] * g.edge_count
        for opt in combo:
            for j, img in opt:
                edge_map[j] = img
        yield tuple(edge_map)


def _canonical_edge_map(g: Graph, perm: Sequence[int], blocks) -> tuple[DirectedEdge, ...]:
    """Order-preserving block bijections, loops kept in stored orientation."""
    edge_map: list[DirectedEdge | None] = [None] * g.edge_count
    for (u, w), members in blocks.items():
        targets = blocks[(min(perm[u], perm[w]), max(perm[u], perm[w]))]
        for j, t in zip(members, targets):
            if u == w:
                edge_map[j] = DirectedEdge(t, 1)
            else:
                s = 1 if g.edge_pairs[t][0] == perm[g.edge_pairs[j][0]] else -1
                edge_map[j] = DirectedEdge(t, s)
    return tuple(edge_map)


def automorphisms(g: Graph) -> list[Automorphism]:
    """The complete automorphism group, vertex permutations first then edge choices.

    Parallel edges may be permuted and self-loops reversed independently,
    so the list can be large for multigraphs (``2 * n!`` for the
    ``n``-edge hosohedron).
    """
    blocks = _edge_blocks(g)
    out = []
    for perm in vertex_automorphisms(g):
        for edge_map in _edge_choices(g, perm, blocks):
            out.append(Automorphism(perm, edge_map))
    return out


def group_order(g: Graph) -> int:
    """``|Aut(X)|`` without listing the edge choices."""
    blocks = _edge_blocks(g)
    per_perm = 1
    for (u, w), members in blocks.items():
        k = len(members)
        per_perm *= math.factorial(k) * (2 ** k if u == w else 1)
    return len(vertex_automorphisms(g)) * per_perm


def _closure(gens: list[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for s in gens:
            q = tuple(s[x] for x in p)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def automorphism_generators(g: Graph) -> list[Automorphism]:
    """A generating set of ``Aut(X)``.

    Vertex-level generators (greedily picked from the vertex group, lifted
    with the canonical edge map) plus generators of the edge-only kernel:
    a transposition and a full cycle per parallel block, and one loop
    reversal per loop block.
    """
    n = g.vertex_count
    blocks = _edge_blocks(g)
    vgroup = vertex_automorphisms(g)
    vgens: list[tuple[int, ...]] = []
    span = {tuple(range(n))}
    for perm in vgroup:
        if perm not in span:
            vgens.append(perm)
            span = _closure(vgens, n)
        if len(span) == len(vgroup):
            break
    gens = [Automorphism(p, _canonical_edge_map(g, p, blocks)) for p in vgens]
    ident = Automorphism.identity(g)

    def onto(a: int, b: int) -> DirectedEdge:
        # parallel edges may be stored with opposite orientations
        return DirectedEdge(b, 1 if g.edge_pairs[a][0] == g.edge_pairs[b][0] else -1)

    for (u, w), members in sorted(blocks.items()):
        k = len(members)
        if k >= 2:
            swap = list(ident.edge_map)
            swap[members[0]], swap[members[1]] = onto(members[0], members[1]), onto(members[1], members[0])
            gens.append(Automorphism(ident.vertex_perm, tuple(swap)))
            if k >= 3:
                cyc = list(ident.edge_map)
                for a, b in zip(members, members[1:] + members[:1]):
                    cyc[a] = onto(a, b)
                gens.append(Automorphism(ident.vertex_perm, tuple(cyc)))
        if u == w:
            flip = list(ident.edge_map)
            flip[members[0]] = DirectedEdge(members[0], -1)
            gens.append(Automorphism(ident.vertex_perm, tuple(flip)))
    return gens


def generated_group(gens: Sequence[Automorphism], g: Graph, limit: int | None = None) -> set[Automorphism]:
    ident = Automorphism.identity(g)
    seen = {ident}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for s in gens:
            b = s.compose(a)
            if b not in seen:
                seen.add(b)
                if limit is not None and len(seen) > limit:
                    return seen
                queue.append(b)
    return seen


def arc_orbits(g: Graph, gens: Sequence[Automorphism]) -> list[list[DirectedEdge]]:
    """Orbits of ``Aut(X)`` on arcs (vertex with an incident edge, i.e. directed edges)."""
    seen: set[DirectedEdge] = set()
    orbits = []
    for e in g.directed_edges():
        if e in seen:
            continue
        seen.add(e)
        orbit = [e]
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = s.edge(x)
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
                    queue.append(y)
        orbits.append(sorted(orbit))
    return orbits


def is_arc_transitive(g: Graph, gens: Sequence[Automorphism] | None = None) -> bool:
    if gens is None:
        gens = automorphism_generators(g)
    return len(arc_orbits(g, gens)) <= 1


def fixed_vertices(g: Graph, gens: Sequence[Automorphism]) -> list[int]:
    """Vertices fixed by every automorphism; an atom over one has full stabilizer in a lift."""
    return [v for v in range(g.vertex_count) if all(s.vertex(v) == v for s in gens)]


# ---------------------------------------------------------------- lifts

@dataclass(frozen=True)
class CoveringSymmetry:
    auto: Automorphism
    beta_chain: tuple[int, ...]

    def covers(self) -> Automorphism:
        """``ψ``: the automorphism of the base graph this symmetry covers."""
        return self.auto


def covering_symmetry(g: Graph, f: Automorphism, beta_chain: Sequence[int]) -> CoveringSymmetry:
    """Pair ``f`` with an explicit ``beta``.

    Raises:
        ValueError: ``∂ beta != f(x0) - x0``.
    """
    want = [0] * g.vertex_count
    want[f.vertex(BASEPOINT)] += 1
    want[BASEPOINT] -= 1
    if list(boundary(g, beta_chain)) != want:
        raise ValueError("beta chain does not run from the basepoint to f(basepoint)")
    return CoveringSymmetry(f, tuple(int(x) for x in beta_chain))


def canonical_lift(g: Graph, basis: CycleBasis, f: Automorphism) -> CoveringSymmetry:
    """Lift ``f`` using the spanning-tree path from ``x0`` to ``f(x0)`` as ``beta``."""
    return CoveringSymmetry(f, basis.tree_chain(f.vertex(BASEPOINT)))


def deck_transformation(g: Graph, z: Sequence[int]) -> CoveringSymmetry:
    return covering_symmetry(g, Automorphism.identity(g), z)


def apply_cover_symmetry(s: CoveringSymmetry, a: Atom) -> Atom:
    return Atom(add_chains(s.beta_chain, s.auto.push(a.chain)), s.auto.vertex(a.vertex))


def compose_symmetries(s1: CoveringSymmetry, s2: CoveringSymmetry) -> CoveringSymmetry:
    """``s1 ∘ s2``: ``(f1 f2, beta1 + f1_*(beta2))``."""
    return CoveringSymmetry(s1.auto.compose(s2.auto), add_chains(s1.beta_chain, s1.auto.push(s2.beta_chain)))


def inverse_symmetry(s: CoveringSymmetry) -> CoveringSymmetry:
    inv = s.auto.inverse()
    return CoveringSymmetry(inv, tuple(-x for x in inv.push(s.beta_chain)))


@dataclass(frozen=True)
class AffineMap:
    """``y -> F y + t`` in basis coordinates."""

    linear: tuple[tuple[int, ...], ...]
    translation: CycleCoords

    def __call__(self, y: CycleCoords) -> CycleCoords:
        num = tuple(sum(a * b for a, b in zip(row, y.num)) for row in self.linear)
        return CycleCoords(num, y.den) + self.translation

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self ∘ other``."""
        cols = list(zip(*other.linear))
        lin = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.linear)
        return AffineMap(lin, self(other.translation))

    @property
    def dimension(self) -> int:
        return len(self.linear)


def linear_part(basis: CycleBasis, f: Automorphism) -> tuple[tuple[int, ...], ...]:
    """Matrix of ``f_*`` on cycle space in basis coordinates.

    ``f_*`` maps cycles to cycles, so each image column is an integral cycle
    and its coordinates are just its chord entries.
    """
    m = basis.rank
    cols = [basis.cycle_coords(f.push(col)) for col in basis.columns]
    for y in cols:
        assert y.den == 1
    return tuple(tuple(cols[k].num[i] for k in range(m)) for i in range(m))


def is_isometry(basis: CycleBasis, linear: Sequence[Sequence[int]]) -> bool:
    m = basis.rank
    G = basis.gram
    GF = [[sum(G[i][k] * linear[k][j] for k in range(m)) for j in range(m)] for i in range(m)]
    FtGF = [[sum(linear[k][i] * GF[k][j] for k in range(m)) for j in range(m)] for i in range(m)]
    return all(FtGF[i][j] == G[i][j] for i in range(m) for j in range(m))


def affine_action(basis: CycleBasis, s: CoveringSymmetry) -> AffineMap:
    """The affine isometry ``c -> π(beta) + f_*(c)`` of cycle space.

    Raises:
        IsometryError: ``F^T G F != G`` (cannot happen for a true automorphism).
    """
    F = linear_part(basis, s.auto)
    if not is_isometry(basis, F):
        raise IsometryError("induced linear map does not preserve the Gram matrix")
    return AffineMap(F, project(basis, s.beta_chain))


def lift_generators(g: Graph, basis: CycleBasis, gens: Sequence[Automorphism] | None = None) -> list[CoveringSymmetry]:
    """Generators of the covering group: canonical lifts plus basis translations."""
    if gens is None:
        gens = automorphism_generators(g)
    out = [canonical_lift(g, basis, f) for f in gens]
    out.extend(deck_transformation(g, col) for col in basis.columns)
    return out

