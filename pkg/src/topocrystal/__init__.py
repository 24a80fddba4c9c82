"""Topological crystals of finite graphs, computed in exact arithmetic.

A connected multigraph ``X`` lifts to its maximal abelian cover, whose
atoms are homology classes of paths from a basepoint.  Orthogonal
projection of path chains onto the cycle space places every atom in
``Z_1(X, R)``; this package builds finite balls of that crystal, checks
when the placement is injective, lifts graph automorphisms to affine
isometries and counts atoms per lattice cell.
"""

from .builtins import BUILTIN_NAMES, builtin_graph, parse_builtin_spec
from .chains import (BASEPOINT, CycleBasis, CycleCoords, boundary, cycle_basis, inner_product,
                     is_cycle, norm_sq, path_chain, project, spanning_tree)
from .cover import Atom, Bond, CrystalFragment, ball, base_atom, make_atom, translate_atom
from .decompose import BridgeError, LoopDecomposition, decompose_cycle, decompose_path_chain, witness_cycle
from .embedding import (EmbeddedFragment, atom_position, bond_angle_cos, bond_vector, distance_sq,
                        embed_fragment, export_fragment)
from .graph import (DirectedEdge, DisconnectedGraphError, Graph, GraphError, GraphFormatError,
                    InvalidPathError, Path, diameter, euler_data, find_bridges, format_graph,
                    is_connected, parse_graph)
from .packing import (PackingReport, atom_residue_count, gram_determinant, lattice_quotient_order,
                      packing_report, spanning_tree_count)
from .symmetry import (AffineMap, Automorphism, CoveringSymmetry, affine_action, automorphism_generators,
                       automorphisms, canonical_lift, deck_transformation, group_order, is_arc_transitive)

__version__ = "0.1.0"

__all__ = [
    "AffineMap", "Atom", "Automorphism", "BASEPOINT", "BUILTIN_NAMES", "Bond", "BridgeError",
    "CoveringSymmetry", "CrystalFragment", "CycleBasis", "CycleCoords", "DirectedEdge",
    "DisconnectedGraphError", "EmbeddedFragment", "Graph", "GraphError", "GraphFormatError",
    "InvalidPathError", "LoopDecomposition", "PackingReport", "Path", "affine_action",
    "atom_position", "atom_residue_count", "automorphism_generators", "automorphisms", "ball",
    "base_atom", "bond_angle_cos", "bond_vector", "boundary", "builtin_graph", "canonical_lift",
    "cycle_basis", "decompose_cycle", "decompose_path_chain", "deck_transformation", "diameter",
    "distance_sq", "embed_fragment", "euler_data", "export_fragment", "find_bridges",
    "format_graph", "gram_determinant", "group_order", "inner_product", "is_arc_transitive",
    "is_connected", "is_cycle", "lattice_quotient_order", "make_atom", "norm_sq",
    "packing_report", "parse_builtin_spec", "parse_graph", "path_chain", "project",
    "spanning_tree", "spanning_tree_count", "translate_atom", "witness_cycle",
]
