"""Embedding the cover into cycle space: positions, bond geometry, exporters.

Exact coordinates live in the fundamental-cycle basis.  Orthonormal float
coordinates only appear on export, through a lower-triangular ``M`` with
``M^T M = G``.
"""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .chains import CycleBasis, CycleCoords, edge_chain, inner_product, project
from .cover import Atom, CrystalFragment
from .graph import DirectedEdge, GraphError
from .linalg import lower_frame

FORMATS = ("json", "csv", "obj")


def atom_position(basis: CycleBasis, a: Atom) -> CycleCoords:
    return project(basis, a.chain)


def bond_vector(basis: CycleBasis, e: DirectedEdge) -> CycleCoords:
    return project(basis, edge_chain(basis.graph, e))


def distance_sq(basis: CycleBasis, a: Atom, b: Atom) -> Fraction:
    d = atom_position(basis, a) - atom_position(basis, b)
    return inner_product(basis, d, d)


def bond_angle_cos(basis: CycleBasis, e1: DirectedEdge, e2: DirectedEdge) -> tuple[Fraction, int]:
    """``(cos^2, sign of cos)`` of the angle between two projected bonds at one atom.

    Raises:
        ValueError: the edges coincide or start at different vertices.
        GraphError: a projected bond has length zero (a bridge).
    """
    g = basis.graph
    if e1 == e2:
        raise ValueError("edges must be distinct")
    if g.source(e1) != g.source(e2):
        raise ValueError("edges must share a source vertex")
    v1, v2 = bond_vector(basis, e1), bond_vector(basis, e2)
    n1, n2 = inner_product(basis, v1, v1), inner_product(basis, v2, v2)
    if n1 == 0 or n2 == 0:
        pair = e1.pair if n1 == 0 else e2.pair
        raise GraphError(f"edge pair {pair} projects to zero (it is a bridge)")
    dot = inner_product(basis, v1, v2)
    sign = (dot > 0) - (dot < 0)
    return dot * dot / (n1 * n2), sign


@dataclass(frozen=True, eq=False)
class EmbeddedFragment:
    fragment: CrystalFragment
    positions: tuple[CycleCoords, ...]
    float_frame: tuple[tuple[float, ...], ...]

    @property
    def basis(self) -> CycleBasis:
        return self.fragment.basis

    def float_coords(self, i: int) -> list[float]:
        y = [float(v) for v in self.positions[i].values]
        return [sum(row[k] * y[k] for k in range(len(y))) for row in self.float_frame]

    def collisions(self) -> list[tuple[int, int]]:
        """Pairs ``(i, j)``, ``i < j``, of distinct atoms sharing a position."""
        groups = defaultdict(list)
        for i, y in enumerate(self.positions):
            groups[y].append(i)
        out = []
        for members in groups.values():
            out.extend((members[0], j) for j in members[1:])
        return sorted(out)

    def is_injective(self) -> bool:
        return len(set(self.positions)) == len(self.positions)


def embed_fragment(fragment: CrystalFragment) -> EmbeddedFragment:
    basis = fragment.basis
    if basis is None:
        raise ValueError("fragment was built without a cycle basis")
    positions = tuple(atom_position(basis, a) for a in fragment.atoms)
    frame = tuple(tuple(r) for r in lower_frame(basis.gram))
    return EmbeddedFragment(fragment, positions, frame)


def _fmt(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _float(x: float) -> float:
    return float(f"{x:.12g}")


def to_json(ef: EmbeddedFragment) -> dict:
    frag, basis = ef.fragment, ef.basis
    g = frag.graph
    atoms = []
    for i, a in enumerate(frag.atoms):
        atoms.append({
            "id": i,
            "vertex": a.vertex,
            "depth": frag.depth[i],
            "chain": list(a.chain),
            "coords": [_fmt(v) for v in ef.positions[i].values],
            "coords_float": [_float(x) for x in ef.float_coords(i)],
        })
    bonds = []
    for b in frag.bonds:
        i, j = frag.bond_ends(b)
        bonds.append({"from": i, "to": j, "edge": b.edge.pair})
    return {
        "graph": {"vertices": g.vertex_count, "edges": [list(p) for p in g.edge_pairs]},
        "cycle_rank": basis.rank,
        "gram": [list(r) for r in basis.gram],
        "atoms": atoms,
        "bonds": bonds,
    }


def to_csv(ef: EmbeddedFragment) -> tuple[bytes, bytes]:
    """Atom table and bond table as two CSV documents."""
    frag = ef.fragment
    m = ef.basis.rank
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["id", "vertex", "depth"] + [f"y{k}" for k in range(m)] + [f"x{k}" for k in range(m)])
    for i, a in enumerate(frag.atoms):
        exact = [_fmt(v) for v in ef.positions[i].values]
        approx = [repr(_float(x)) for x in ef.float_coords(i)]
        w.writerow([i, a.vertex, frag.depth[i]] + exact + approx)
    bonds = io.StringIO()
    wb = csv.writer(bonds, lineterminator="\n")
    wb.writerow(["from", "to", "edge"])
    for b in frag.bonds:
        i, j = frag.bond_ends(b)
        wb.writerow([i, j, b.edge.pair])
    return out.getvalue().encode(), bonds.getvalue().encode()


def to_obj(ef: EmbeddedFragment, project_dims: int | None = None) -> bytes:
    frag = ef.fragment
    m = ef.basis.rank
    if m < 1:
        raise ValueError("OBJ export needs cycle rank >= 1")
    dims = min(m, 3) if project_dims is None else project_dims
    if dims not in (2, 3) or dims > m:
        raise ValueError(f"cannot project a rank-{m} crystal to {dims} dimensions")
    name = frag.graph.name or "graph"
    lines = [
        f"# topological crystal of {name}",
        f"# radius {frag.radius}, cycle rank {m}, projection dims {dims}",
    ]
    if dims < m:
        lines.append(f"# truncated: orthonormal axes 0..{dims - 1} of {m} kept")
    for i in range(len(frag.atoms)):
        xyz = ef.float_coords(i)[:dims] + [0.0] * (3 - dims)
        lines.append("v " + " ".join(f"{x:.9g}" for x in xyz))
    for b in frag.bonds:
        i, j = frag.bond_ends(b)
        lines.append(f"l {i + 1} {j + 1}")
    return ("\n".join(lines) + "\n").encode()


def export_fragment(ef: EmbeddedFragment, format: str, project_dims: int | None = None) -> bytes:
    """Serialize an embedded fragment.

    ``csv`` returns the atom table only; use :func:`to_csv` for both tables.
    """
    if format == "json":
        return (json.dumps(to_json(ef), indent=1) + "\n").encode()
    if format == "csv":
        return to_csv(ef)[0]
    if format == "obj":
        return to_obj(ef, project_dims)
    raise ValueError(f"unknown export format {format!r}; expected one of {FORMATS}")


# exact planar segment tests, used for m = 2 crystals

def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p, q, r) -> bool:
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segments_meet(a, b, c, d) -> bool:
    """Closed segments ``ab`` and ``cd`` share at least one point."""
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


def planar_bond_crossings(ef: EmbeddedFragment) -> list[tuple[int, int]]:
    """Bond index pairs whose segments meet anywhere other than a shared atom.

    Only meaningful for cycle rank 2.  Collinearity and incidence are
    decided affinely, so basis coordinates serve as well as orthonormal ones.
    """
    if ef.basis.rank != 2:
        raise ValueError("planar crossing test needs cycle rank 2")
    frag = ef.fragment
    ends = [frag.bond_ends(b) for b in frag.bonds]
    pts = [ef.positions[i].values for i in range(len(frag.atoms))]
    bad = []
    for s in range(len(ends)):
        i, j = ends[s]
        for t in range(s + 1, len(ends)):
            k, l = ends[t]
            shared = {i, j} & {k, l}
            if not shared:
                if segments_meet(pts[i], pts[j], pts[k], pts[l]):
                    bad.append((s, t))
                continue
            if len(shared) == 2:
                bad.append((s, t))
                continue
            (c,) = shared
            a = j if i == c else i
            b = l if k == c else k
            # two segments from one atom overlap beyond it only when they point the same way
            o = _orient(pts[c], pts[a], pts[b])
            if o == 0:
                da = (pts[a][0] - pts[c][0], pts[a][1] - pts[c][1])
                db = (pts[b][0] - pts[c][0], pts[b][1] - pts[c][1])
                if da[0] * db[0] + da[1] * db[1] > 0:
                    bad.append((s, t))
    return bad
