"""Atoms and bonds of the maximal abelian cover, and finite balls around the base atom.

An atom is keyed by the integral 1-chain of any path from the basepoint
to it: two based paths are homologous exactly when their chains agree,
so the chain is a canonical key even for graphs with bridges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .chains import BASEPOINT, CycleBasis, add_chains, boundary, is_cycle, zero_chain
from .graph import DirectedEdge, Graph, require_connected


@dataclass(frozen=True)
class Atom:
    chain: tuple[int, ...]
    vertex: int = field(compare=False)

    def step(self, g: Graph, e: DirectedEdge) -> "Atom":
        """The atom at the other end of the bond ``(self, e)``."""
        c = list(self.chain)
        c[e.pair] += e.sign
        return Atom(tuple(c), g.target(e))


@dataclass(frozen=True)
class Bond:
    source: Atom
    edge: DirectedEdge

    def target(self, g: Graph) -> Atom:
        return self.source.step(g, self.edge)


def base_atom(g: Graph) -> Atom:
    require_connected(g)
    return Atom(zero_chain(g), BASEPOINT)


def neighbors(g: Graph, a: Atom) -> list[tuple[DirectedEdge, Atom]]:
    return [(e, a.step(g, e)) for e in g.out_edges(a.vertex)]


def atom_vertex(a: Atom) -> int:
    return a.vertex


def vertex_from_chain(g: Graph, chain: Sequence[int]) -> int:
    """Read the endpoint off ``∂c = x - x0``."""
    d = boundary(g, chain)
    if not any(d):
        return BASEPOINT
    ends = [v for v, x in enumerate(d) if x == 1]
    if len(ends) != 1 or d[BASEPOINT] != -1 or sum(abs(x) for x in d) != 2:
        raise ValueError("chain does not come from a path starting at the basepoint")
    return ends[0]


def make_atom(g: Graph, chain: Sequence[int]) -> Atom:
    chain = tuple(int(x) for x in chain)
    return Atom(chain, vertex_from_chain(g, chain))


def translate_atom(a: Atom, z: Sequence[int], g: Graph | None = None) -> Atom:
    """Deck transformation by the integral cycle ``z``.

    Raises:
        ValueError: if ``g`` is given and ``z`` is not a cycle.
    """
    if g is not None and not is_cycle(g, z):
        raise ValueError("translation chain is not a cycle")
    return Atom(add_chains(a.chain, z), a.vertex)


@dataclass(frozen=True, eq=False)
class CrystalFragment:
    """The radius-``r`` ball of the cover around the base atom.

    ``atoms`` are in BFS order (layer, then parent order, then edge order),
    ``depth[i]`` is the bond distance of atom ``i`` from the base.  Each bond
    is stored once, in the orientation of its stored edge (sign ``+1``).
    Atoms at depth ``r`` generally miss some of their bonds.
    """

    graph: Graph
    basis: CycleBasis | None
    radius: int
    atoms: tuple[Atom, ...]
    depth: tuple[int, ...]
    bonds: tuple[Bond, ...]
    index: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.atoms)

    def bond_ends(self, b: Bond) -> tuple[int, int]:
        return self.index[b.source], self.index[b.target(self.graph)]

    def is_boundary(self, i: int) -> bool:
        return self.depth[i] == self.radius


def ball(g: Graph, basis: CycleBasis | None, r: int) -> CrystalFragment:
    if r < 0:
        raise ValueError("radius must be nonnegative")
    start = base_atom(g)
    atoms = [start]
    depth = [0]
    index = {start: 0}
    bonds: list[Bond] = []
    seen_bonds: set[tuple[tuple[int, ...], int]] = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        a = atoms[i]
        for e, b in neighbors(g, a):
            j = index.get(b)
            if j is None:
                if depth[i] == r:
                    continue
                j = len(atoms)
                atoms.append(b)
                depth.append(depth[i] + 1)
                index[b] = j
                queue.append(j)
            src = a if e.sign > 0 else b
            key = (src.chain, e.pair)
            if key not in seen_bonds:
                seen_bonds.add(key)
                bonds.append(Bond(src, DirectedEdge(e.pair, 1)))
    return CrystalFragment(g, basis, r, tuple(atoms), tuple(depth), tuple(bonds), index)
