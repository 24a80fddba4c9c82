"""Spanning-tree counts, Gram determinants, Smith normal form and the packing fraction.

The packing fraction is ``|A/Z_1| / |L/Z_1|``.  The numerator is measured
by reducing atom coordinates modulo ``Z^m`` over a ball that reaches every
vertex; the denominator is the order of the cokernel of ``G``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import BASEPOINT, CycleBasis, adjoint_boundary, chain_dot, cycle_basis, vertex_chain
from .cover import CrystalFragment, ball
from .embedding import atom_position
from .graph import DisconnectedGraphError, Graph, diameter, find_bridges, is_connected
from .linalg import bareiss_det, smith_normal_form

__all__ = [
    "PackingReport", "atom_residue_count", "cut_gram_determinant", "gram_determinant",
    "lattice_quotient_order", "laplacian", "packing_report", "smith_normal_form",
    "spanning_tree_count",
]


def laplacian(g: Graph) -> list[list[int]]:
    n = g.vertex_count
    lap = [[0] * n for _ in range(n)]
    for u, w in g.edge_pairs:
        if u == w:
            continue
        lap[u][u] += 1
        lap[w][w] += 1
        lap[u][w] -= 1
        lap[w][u] -= 1
    return lap


def spanning_tree_count(g: Graph) -> int:
    """Number of spanning trees via the reduced Laplacian determinant.

    Raises:
        DisconnectedGraphError: for disconnected input.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("spanning trees of a disconnected graph: count is 0")
    lap = laplacian(g)
    keep = [v for v in range(g.vertex_count) if v != BASEPOINT]
    return bareiss_det([[lap[i][j] for j in keep] for i in keep])


def cut_gram_determinant(g: Graph) -> int:
    """Gram determinant of the cut basis ``{∂* x : x != x0}``.

    Equals the reduced Laplacian determinant; kept as a separate route
    that goes through the 1-chain inner product.
    """
    cuts = [adjoint_boundary(g, vertex_chain(g, v)) for v in range(g.vertex_count) if v != BASEPOINT]
    return bareiss_det([[chain_dot(a, b) for b in cuts] for a in cuts])


def gram_determinant(basis: CycleBasis) -> int:
    return bareiss_det(basis.gram)


def lattice_quotient_order(basis: CycleBasis) -> int:
    """``|L / Z_1|`` as the product of the invariant factors of ``G``.

    In dual-basis coordinates ``L = Z_1^*`` is ``Z^m`` and ``Z_1`` is the
    column lattice of ``G``.
    """
    return math.prod(smith_normal_form(basis.gram))


def atom_residue_count(fragment: CrystalFragment, basis: CycleBasis, strict: bool = True) -> int:
    """Distinct atom positions modulo the cycle lattice ``Z^m``.

    Args:
        strict: refuse balls that may miss a vertex fiber.  With
            ``strict=False`` the residues present in the ball are counted
            whatever its radius (a radius-0 ball always gives 1).

    Raises:
        ValueError: ``strict`` and the ball radius is below the graph
            diameter, so not every vertex fiber is guaranteed to be represented.
    """
    if strict and fragment.radius < diameter(fragment.graph):
        raise ValueError(
            f"radius {fragment.radius} is below the diameter {diameter(fragment.graph)}; coverage not certified")
    return len({atom_position(basis, a).residue() for a in fragment.atoms})


@dataclass(frozen=True)
class PackingReport:
    vertex_count: int
    tree_count: int
    packing_fraction: Fraction | None
    invariant_factors: tuple[int, ...]
    residue_count: int | None
    gram_det: int
    bridges: tuple[int, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "spanning_trees": self.tree_count,
            "gram_determinant": self.gram_det,
            "invariant_factors": list(self.invariant_factors),
            "residue_count": self.residue_count,
            "packing_fraction": None if self.packing_fraction is None else str(self.packing_fraction),
            "bridges": list(self.bridges),
        }


def packing_report(g: Graph, basis: CycleBasis | None = None) -> PackingReport:
    """Assemble counts and cross-check them.

    For a graph with bridges the atom map is not injective, so the residue
    count and the packing fraction are left out (``None``).

    Raises:
        AssertionError: a cross-check failed.
    """
    if basis is None:
        basis = cycle_basis(g)
    trees = spanning_tree_count(g)
    det = gram_determinant(basis)
    factors = tuple(smith_normal_form(basis.gram))
    if det != trees:
        raise AssertionError(f"det G = {det} but the reduced Laplacian gives {trees}")
    if math.prod(factors) != trees:
        raise AssertionError(f"invariant factors multiply to {math.prod(factors)}, expected {trees}")
    bridges = tuple(sorted(find_bridges(g)))
    if bridges:
        return PackingReport(g.vertex_count, trees, None, factors, None, det, bridges)
    frag = ball(g, basis, diameter(g))
    residues = atom_residue_count(frag, basis)
    if residues != g.vertex_count:
        raise AssertionError(f"{residues} atom residues for {g.vertex_count} vertices")
    return PackingReport(g.vertex_count, trees, Fraction(g.vertex_count, trees), factors, residues, det)
