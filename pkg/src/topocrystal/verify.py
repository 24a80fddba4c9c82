"""Invariant suite run by ``topocrystal verify``.

Each check returns a :class:`CheckResult`; a failing check carries a
counterexample dict with the graph in file format, the offending path
word (if any) and the values that disagreed.  A dump written by the CLI
embeds the path in ``# path:`` comments, so feeding the dump back to
``verify`` replays exactly that path.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import chains as ch
from .chains import CycleBasis, CycleCoords, cycle_basis, project
from .cover import Atom, CrystalFragment, ball, base_atom, translate_atom
from .decompose import (BridgeError, decompose_path_chain, is_simple_loop, is_simple_path,
                        support_contained, witness_cycle)
from .embedding import atom_position, bond_vector, embed_fragment, planar_bond_crossings
from .graph import (DirectedEdge, Graph, Path, components, diameter, find_bridges, format_graph,
                    require_connected)
from .linalg import bareiss_det, in_column_lattice, mat_mul, smith_normal_form
from .packing import atom_residue_count, cut_gram_determinant, spanning_tree_count
from .symmetry import (MAX_VERTICES, affine_action, apply_cover_symmetry,
                       automorphism_generators, canonical_lift, compose_symmetries,
                       deck_transformation, inverse_symmetry, is_arc_transitive)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    counterexample: dict | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


@dataclass
class VerifyReport:
    graph: Graph
    radius: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "graph": {"vertices": self.graph.vertex_count, "edges": [list(p) for p in self.graph.edge_pairs]},
            "radius": self.radius,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail, "counterexample": c.counterexample}
                for c in self.checks
            ],
        }


class _Fail(Exception):
    def __init__(self, message: str, **values):
        super().__init__(message)
        self.values = values


def _cx(g: Graph, path: Path | None = None, **values) -> dict:
    out = {"graph": format_graph(g)}
    if path is not None:
        out["path_start"] = path.start
        out["path"] = path.word()
    out.update({k: str(v) for k, v in values.items()})
    return out


def random_path(g: Graph, rng: random.Random, max_len: int = 12, start: int | None = None) -> Path:
    v = rng.randrange(g.vertex_count) if start is None else start
    s = v
    edges = []
    for _ in range(rng.randint(0, max_len)):
        outs = g.out_edges(v)
        if not outs:
            break
        e = rng.choice(outs)
        edges.append(e)
        v = g.target(e)
    return Path(s, tuple(edges))


def random_integral_chain(g: Graph, rng: random.Random, bound: int = 3) -> tuple[int, ...]:
    return tuple(rng.randint(-bound, bound) for _ in range(g.edge_count))


# --------------------------------------------------------------- path checks

def check_decomposition(g: Graph, p: Path) -> None:
    """Raise ``_Fail`` if the decomposition of ``p`` breaks its contract."""
    cp = ch.path_chain(g, p)
    dec = decompose_path_chain(g, p)
    delta = dec.simple_path
    total = ch.path_chain(g, delta)
    if delta.start != p.start or g.path_end(delta) != g.path_end(p):
        raise _Fail("simple path has wrong endpoints")
    if not is_simple_path(g, delta):
        raise _Fail("returned path is not simple", delta=delta.word())
    if not support_contained(total, cp):
        raise _Fail("simple path leaves the support", delta=delta.word())
    positive = sum(abs(x) for x in cp)
    if len(dec.simple_loops) > positive:
        raise _Fail("more loops than the support mass allows", loops=len(dec.simple_loops))
    for loop in dec.simple_loops:
        if not is_simple_loop(g, loop):
            raise _Fail("loop is not simple", loop=f"{loop.start}: {loop.word()}")
        lc = ch.path_chain(g, loop)
        if not support_contained(lc, cp):
            raise _Fail("loop leaves the support", loop=f"{loop.start}: {loop.word()}")
        total = ch.add_chains(total, lc)
    if total != cp:
        raise _Fail("parts do not sum to the path chain", total=total, chain=cp)


def check_witness(g: Graph, p: Path) -> None:
    cp = ch.path_chain(g, p)
    if not any(cp):
        return
    z = witness_cycle(g, p)
    if not ch.is_cycle(g, z):
        raise _Fail("witness is not a cycle", z=z)
    if ch.chain_dot(z, cp) < 1:
        raise _Fail("witness pairs to less than 1", z=z, pairing=ch.chain_dot(z, cp))


def check_path(g: Graph, p: Path, bridgeless: bool) -> list[CheckResult]:
    """Decomposition and witness checks for one explicit path (counterexample replay)."""
    out = []
    for name, fn in (("decomposition", check_decomposition), ("witness", check_witness)):
        if name == "witness" and not bridgeless:
            continue
        try:
            fn(g, p)
            out.append(CheckResult(f"path {name}", True, f"start {p.start}: {p.word() or '(trivial)'}"))
        except _Fail as exc:
            out.append(CheckResult(f"path {name}", False, str(exc), _cx(g, p, **exc.values)))
    return out


# --------------------------------------------------------------- the suite

class _Suite:
    def __init__(self, g: Graph, radius: int, samples: int, seed: int):
        require_connected(g)
        self.g = g
        self.r = radius
        self.samples = samples
        self.rng = random.Random(seed)
        self.basis = cycle_basis(g)
        self.bridges = find_bridges(g)
        self.fragment = ball(g, self.basis, radius)
        self.embedded = embed_fragment(self.fragment)
        self.report = VerifyReport(g, radius)

    def run(self, name: str, fn: Callable[[], str | None]) -> None:
        try:
            detail = fn() or ""
            self.report.checks.append(CheckResult(name, True, detail))
        except _Fail as exc:
            path = exc.values.pop("path", None)
            self.report.checks.append(CheckResult(name, False, str(exc), _cx(self.g, path, **exc.values)))

    # graph core
    def edge_axioms(self):
        g = self.g
        for e in g.directed_edges():
            inv = e.inverse()
            if inv.inverse() != e or inv == e or g.source(inv) != g.target(e) or g.target(inv) != g.source(e):
                raise _Fail("inverse axioms violated", edge=e)
        return f"{2 * g.edge_count} directed edges"

    def bridge_oracle(self):
        g = self.g
        base = len(components(g))
        brute = {j for j in range(g.edge_count) if len(components(g.without_pair(j))) > base}
        if brute != self.bridges:
            raise _Fail("low-link bridges disagree with removal oracle", lowlink=sorted(self.bridges), brute=sorted(brute))
        return f"bridges {sorted(self.bridges)}"

    # chain algebra
    def path_boundaries(self):
        g = self.g
        for _ in range(self.samples):
            p = random_path(g, self.rng)
            d = ch.boundary(g, ch.path_chain(g, p))
            want = [0] * g.vertex_count
            want[g.path_end(p)] += 1
            want[p.start] -= 1
            if list(d) != want:
                raise _Fail("boundary of path chain is not end - start", path=p)
        return f"{self.samples} random paths"

    def gram(self):
        b = self.basis
        m = b.rank
        if m and bareiss_det(b.gram) <= 0:
            raise _Fail("Gram determinant not positive")
        prod = mat_mul(b.gram, b.adjugate)
        if any(prod[i][j] != (b.det if i == j else 0) for i in range(m) for j in range(m)):
            raise _Fail("G times adjugate is not det * I")
        for j, col in zip(b.non_tree, b.columns):
            if not ch.is_cycle(self.g, col) or col[j] != 1 or any(col[k] for k in b.non_tree if k != j):
                raise _Fail("basis column is not a fundamental cycle", chord=j)
        return f"m = {m}, det G = {b.det}"

    def projection(self):
        g, b = self.g, self.basis
        for _ in range(self.samples):
            c = random_integral_chain(g, self.rng)
            y = project(b, c)
            # work with den * (B y) to stay in integers
            d = y.den
            yc = _scaled_chain(b, y.num)
            resid = [d * x - w for x, w in zip(c, yc)]
            for col in b.columns:
                if ch.chain_dot(resid, col) != 0:
                    raise _Fail("<π(c), z> != <c, z> for a basis cycle z", chain=c)
            if d * d * ch.chain_dot(c, c) != ch.chain_dot(yc, yc) + ch.chain_dot(resid, resid):
                raise _Fail("Pythagoras fails", chain=c)
            z = tuple(self.rng.randint(-3, 3) for _ in range(b.rank))
            zc = _scaled_chain(b, z)
            if project(b, zc) != CycleCoords(z):
                raise _Fail("projection does not fix a cycle", coords=z)
        return f"{self.samples} random chains"

    def cuts(self):
        g, b = self.g, self.basis
        for v in range(g.vertex_count):
            cut = ch.adjoint_boundary(g, ch.vertex_chain(g, v))
            if not project(b, cut).is_zero():
                raise _Fail("cut does not project to zero", vertex=v)
        return "every vertex star"

    # path decomposition
    def decomposition(self):
        for _ in range(self.samples):
            p = random_path(self.g, self.rng)
            try:
                check_decomposition(self.g, p)
            except _Fail as exc:
                exc.values["path"] = p
                raise
        return f"{self.samples} random paths"

    def witness(self):
        g = self.g
        if self.bridges:
            j = min(self.bridges)
            u, _ = g.edge_pairs[j]
            try:
                witness_cycle(g, Path(u, (DirectedEdge(j),)))
            except BridgeError:
                return f"bridge {j} correctly blocks the witness"
            raise _Fail("witness construction crossed a bridge", bridge=j)
        done = 0
        for _ in range(self.samples):
            p = random_path(g, self.rng)
            if not any(ch.path_chain(g, p)):
                continue
            try:
                check_witness(g, p)
            except _Fail as exc:
                exc.values["path"] = p
                raise
            done += 1
        return f"{done} nonzero path chains"

    # cover
    def cover_structure(self):
        g, frag = self.g, self.fragment
        incident = [0] * len(frag.atoms)
        for b in frag.bonds:
            t = b.target(g)
            if g.source(b.edge) != b.source.vertex or g.target(b.edge) != t.vertex:
                raise _Fail("bond does not cover its edge", edge=b.edge)
            i, j = frag.bond_ends(b)
            incident[i] += 1
            incident[j] += 1
        for i, a in enumerate(frag.atoms):
            over_base = a.vertex == ch.BASEPOINT
            if over_base != ch.is_cycle(g, a.chain):
                raise _Fail("fiber over the basepoint is not the set of cycle atoms", atom=a.chain)
            if frag.depth[i] < frag.radius and incident[i] != g.degree(a.vertex):
                raise _Fail("interior atom lost bonds", atom=a.chain, bonds=incident[i], degree=g.degree(a.vertex))
        return f"{len(frag.atoms)} atoms, {len(frag.bonds)} bonds"

    def deck_free(self):
        g, b = self.g, self.basis
        a0 = base_atom(g)
        for _ in range(min(self.samples, 50)):
            z = tuple(self.rng.randint(-2, 2) for _ in range(b.rank))
            if not any(z):
                continue
            zc = b.chain_of(CycleCoords(z))
            for a in self.fragment.atoms[:20] or [a0]:
                if translate_atom(a, zc) == a:
                    raise _Fail("nonzero translation fixes an atom", z=z)
        return "translations act freely"

    # embedding
    def injectivity(self):
        ef = self.embedded
        hits = ef.collisions()
        if not self.bridges:
            if hits:
                i, j = hits[0]
                raise _Fail("two atoms share a position", a=ef.fragment.atoms[i].chain, b=ef.fragment.atoms[j].chain)
            return f"{len(ef.positions)} distinct positions"
        # bridged: the bond across a bridge collapses
        found = bridge_collision(self.g, self.basis)
        if found is None:
            raise _Fail("no collision across a bridge")
        a, b = found
        if atom_position(self.basis, a) != atom_position(self.basis, b):
            raise _Fail("atoms across a bridge have different positions")
        return f"collision across bridge: {len(hits)} colliding pairs in ball"

    def sum_zero(self):
        g, b = self.g, self.basis
        for v in range(g.vertex_count):
            total = CycleCoords.zero(b.rank)
            for e in g.out_edges(v):
                total = total + bond_vector(b, e)
            if not total.is_zero():
                raise _Fail("bond vectors do not sum to zero", vertex=v, total=total)
        return "every vertex"

    def translation_covariance(self):
        b = self.basis
        for _ in range(min(self.samples, 50)):
            z = tuple(self.rng.randint(-2, 2) for _ in range(b.rank))
            zc = b.chain_of(CycleCoords(z))
            a = self.rng.choice(self.fragment.atoms)
            if atom_position(b, translate_atom(a, zc)) != atom_position(b, a) + CycleCoords(z):
                raise _Fail("translation is not covariant", atom=a.chain, z=z)
        return "random translations"

    def planar_bonds(self):
        if self.basis.rank != 2 or self.bridges:
            return "skipped (needs bridgeless rank 2)"
        bad = planar_bond_crossings(self.embedded)
        if bad:
            raise _Fail("bond segments cross", bonds=bad[0])
        return f"{len(self.fragment.bonds)} segments pairwise disjoint off shared atoms"

    # symmetry
    def symmetry(self):
        g, b = self.g, self.basis
        if g.vertex_count > MAX_VERTICES:
            return f"skipped (> {MAX_VERTICES} vertices)"
        gens = automorphism_generators(g)
        lifts = [canonical_lift(g, b, f) for f in gens]
        checks = symmetry_checks(g, b, self.fragment, lifts, self.rng)
        return f"{len(gens)} generators, {checks}"

    def kernel(self):
        g, b = self.g, self.basis
        atoms = self.fragment.atoms
        # cycles from the ball's base fiber plus the fundamental cycles
        zs = [a.chain for a in atoms if a.vertex == ch.BASEPOINT][:8] + list(b.columns[:8])
        for z in zs:
            s = deck_transformation(g, z)
            if not s.covers().is_identity():
                raise _Fail("deck transformation covers a nontrivial automorphism", z=z)
            aff = affine_action(b, s)
            if any(aff.linear[i][j] != (1 if i == j else 0) for i in range(b.rank) for j in range(b.rank)):
                raise _Fail("deck transformation has nontrivial linear part", z=z)
            if aff.translation != b.cycle_coords(z):
                raise _Fail("deck translation vector is wrong", z=z)
            for a in atoms:
                if apply_cover_symmetry(s, a) != translate_atom(a, z):
                    raise _Fail("kernel element is not the deck translation", z=z, atom=a.chain)
        if g.vertex_count <= MAX_VERTICES:
            a0 = base_atom(g)
            probes = [Atom(b.tree_chain(v), v) for v in range(g.vertex_count)]
            probes += [probes[g.source(e)].step(g, e) for e in g.directed_edges()]
            for f in automorphism_generators(g):
                s = canonical_lift(g, b, f)
                if s.covers() != f:
                    raise _Fail("ψ(lift(f)) != f")
                if f.is_identity():
                    continue
                # tree atoms over every vertex plus one step along every edge
                # see any vertex or edge that f moves
                shift = ch.sub_chains(apply_cover_symmetry(s, a0).chain, a0.chain)
                if all(apply_cover_symmetry(s, a) == translate_atom(a, shift) for a in probes):
                    raise _Fail("lift of a nontrivial automorphism acts as a deck transformation")
        return f"{len(zs)} deck translations checked"

    # packing
    def packing(self):
        g, b = self.g, self.basis
        trees = spanning_tree_count(g)
        det = bareiss_det(b.gram)
        cut = cut_gram_determinant(g)
        if not trees == det == cut:
            raise _Fail("spanning tree counts disagree", laplacian=trees, gram=det, cuts=cut)
        factors = smith_normal_form(b.gram)
        if math.prod(factors) != trees:
            raise _Fail("invariant factors do not multiply to |T|", factors=factors)
        detail = f"|T| = {trees}"
        if not self.bridges:
            frag = self.fragment if self.r >= diameter(g) else ball(g, b, diameter(g))
            count = atom_residue_count(frag, b)
            if count != g.vertex_count:
                raise _Fail("atom residues != |V|", residues=count)
            detail += f", |A/Z1| = {count}, packing fraction {Fraction(g.vertex_count, trees)}"
        return detail

    def dual_lattice(self):
        g, b = self.g, self.basis
        for j in range(g.edge_count):
            pe = b.chain_of(bond_vector(b, DirectedEdge(j)))
            for col in b.columns:
                val = ch.chain_dot(pe, col)
                if val != col[j]:
                    raise _Fail("<π(e), z> != <e, z>", edge=j)
        if b.rank and b.rank <= 8 and b.det <= 10 ** 6:
            # points pairing integrally with Z1 lie in the lattice spanned by the π(e)
            gen = [[b.edge_projections[j][i] for j in range(g.edge_count)] for i in range(b.rank)]
            for _ in range(20):
                w = [self.rng.randint(-4, 4) for _ in range(b.rank)]
                # y = G^{-1} w pairs integrally with every basis cycle
                num = [sum(b.adjugate[i][k] * w[k] for k in range(b.rank)) for i in range(b.rank)]
                if not in_column_lattice(gen, num):
                    raise _Fail("dual-lattice point outside the lattice of projected edges", w=w)
        return "edges pair integrally with cycles"

    def arc_transitivity(self):
        g = self.g
        if g.vertex_count > MAX_VERTICES or g.edge_count == 0:
            return "skipped"
        return "arc-transitive" if is_arc_transitive(g) else "not arc-transitive"


def _scaled_chain(basis: CycleBasis, num) -> list[int]:
    out = [0] * basis.graph.edge_count
    for k, col in enumerate(basis.columns):
        if num[k]:
            for j, x in enumerate(col):
                if x:
                    out[j] += x * num[k]
    return out


def bridge_collision(g: Graph, basis: CycleBasis) -> tuple[Atom, Atom] | None:
    """Two atoms joined by one bond over a bridge; they always share a position."""
    for j in sorted(find_bridges(g)):
        u, _ = g.edge_pairs[j]
        a = Atom(basis.tree_chain(u), u)
        return a, a.step(g, DirectedEdge(j))
    return None


def symmetry_checks(g: Graph, basis: CycleBasis, fragment: CrystalFragment,
                    lifts: Iterable, rng: random.Random) -> str:
    """Equivariance of atoms and bonds, isometry, and the composition law."""
    lifts = list(lifts)
    positions = {a: atom_position(basis, a) for a in fragment.atoms}
    n_bonds = 0
    for s in lifts:
        aff = affine_action(basis, s)
        for a in fragment.atoms:
            img = apply_cover_symmetry(s, a)
            if img.vertex != s.auto.vertex(a.vertex):
                raise _Fail("lift does not cover its automorphism", atom=a.chain)
            if atom_position(basis, img) != aff(positions[a]):
                raise _Fail("atom embedding is not equivariant", atom=a.chain)
        for bond in fragment.bonds:
            a, t = bond.source, bond.target(g)
            sa, st = apply_cover_symmetry(s, a), apply_cover_symmetry(s, t)
            if sa.step(g, s.auto.edge(bond.edge)) != st:
                raise _Fail("bond is not mapped to a bond", atom=a.chain, edge=bond.edge)
            mid = (positions[a] + positions[t]).scale(Fraction(1, 2))
            img_mid = (atom_position(basis, sa) + atom_position(basis, st)).scale(Fraction(1, 2))
            if aff(mid) != img_mid:
                raise _Fail("bond midpoint is not equivariant", atom=a.chain, edge=bond.edge)
            n_bonds += 1
        inv = inverse_symmetry(s)
        if not compose_symmetries(s, inv).auto.is_identity() or any(compose_symmetries(s, inv).beta_chain):
            raise _Fail("s composed with its inverse is not the identity")
    m = basis.rank
    for s1 in lifts:
        for s2 in lifts:
            both = affine_action(basis, compose_symmetries(s1, s2))
            a1, a2 = affine_action(basis, s1), affine_action(basis, s2)
            for _ in range(5):
                y = CycleCoords.from_values([Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(m)])
                if both(y) != a1(a2(y)):
                    raise _Fail("affine action is not a homomorphism")
    return f"{len(fragment.atoms)} atoms and {n_bonds} bond images checked"


def verify_suite(g: Graph, r: int, samples: int = 200, seed: int = 0) -> VerifyReport:
    """Run every invariant check at ball radius ``r``.

    Raises:
        DisconnectedGraphError: the graph is not connected.
    """
    suite = _Suite(g, r, samples, seed)
    for name in ("edge_axioms", "bridge_oracle", "path_boundaries", "gram", "projection", "cuts",
                 "decomposition", "witness", "cover_structure", "deck_free", "injectivity",
                 "sum_zero", "translation_covariance", "planar_bonds", "symmetry", "kernel",
                 "packing", "dual_lattice", "arc_transitivity"):
        suite.run(name.replace("_", " "), getattr(suite, name))
    return suite.report
