"""Command-line interface.

Exit status: 0 on success, 1 when ``verify`` finds a counterexample,
2 on usage errors, unreadable input or a graph the command cannot handle.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path as FilePath

from . import __version__
from .builtins import BUILTIN_NAMES, builtin_graph, parse_builtin_spec
from .chains import cycle_basis
from .cover import ball
from .embedding import FORMATS, embed_fragment, export_fragment, to_csv
from .graph import (Graph, GraphError, Path, components, find_bridges, format_graph,
                    is_connected, parse_graph, require_connected)
from .packing import cut_gram_determinant, gram_determinant, packing_report, spanning_tree_count
from .symmetry import (MAX_VERTICES, affine_action, arc_orbits, automorphism_generators,
                       canonical_lift, fixed_vertices, group_order, is_arc_transitive)
from .verify import check_path, verify_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_DUMP_KEYS = re.compile(r"^#\s*(radius|seed|samples|path)\s*:\s*(.*)$")


class UsageError(Exception):
    pass


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_graph(args) -> tuple[Graph, dict]:
    """The graph named on the command line and any ``# key: value`` replay hints."""
    if (args.graph is None) == (args.builtin is None):
        raise UsageError("give exactly one graph source: a file path or --builtin NAME[:N]")
    if args.builtin is not None:
        return parse_builtin_spec(args.builtin), {}
    path = FilePath(args.graph)
    try:
        text = sys.stdin.read() if args.graph == "-" else path.read_text("utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
    hints = {}
    for line in text.splitlines():
        m = _DUMP_KEYS.match(line.strip())
        if m:
            hints[m.group(1)] = m.group(2).strip()
    return parse_graph(text, name=path.stem), hints


def _frac(y) -> list[str]:
    return [f"{v.numerator}/{v.denominator}" for v in y.values]


def _cycles(perm) -> str:
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen or perm[s] == s:
            continue
        cyc, v = [], s
        while v not in seen:
            seen.add(v)
            cyc.append(str(v))
            v = perm[v]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def _edge_moves(f) -> str:
    moves = [f"{j}->{img}" for j, img in enumerate(f.edge_map) if (img.pair, img.sign) != (j, 1)]
    return " ".join(moves) or "none"


# ------------------------------------------------------------------ commands

def cmd_info(args, out) -> int:
    g, _ = _load_graph(args)
    comps = components(g)
    rank = g.edge_count - g.vertex_count + len(comps)
    bridges = sorted(find_bridges(g))
    info = {
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "cycle_rank": rank,
        "connected": len(comps) <= 1,
        "components": len(comps),
        "bridges": bridges,
    }
    if args.json:
        print(_dump_json(info), file=out)
        return EXIT_OK
    print(f"vertices     {info['vertices']}", file=out)
    print(f"edges        {info['edges']}", file=out)
    print(f"cycle rank   {rank}", file=out)
    print(f"connected    {'yes' if info['connected'] else f'no ({len(comps)} components)'}", file=out)
    print(f"bridges      {' '.join(map(str, bridges)) if bridges else 'none'}", file=out)
    return EXIT_OK


def cmd_trees(args, out) -> int:
    g, _ = _load_graph(args)
    lap = spanning_tree_count(g)
    gram = gram_determinant(cycle_basis(g))
    cuts = cut_gram_determinant(g)
    if args.json:
        print(_dump_json({"spanning_trees": lap, "laplacian": lap, "cycle_gram": gram, "cut_gram": cuts}), file=out)
    else:
        print(lap, file=out)
        print(f"  reduced Laplacian determinant  {lap}", file=out)
        print(f"  cycle Gram determinant         {gram}", file=out)
        print(f"  cut Gram determinant           {cuts}", file=out)
    if not lap == gram == cuts:
        print("error: spanning-tree counts disagree", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_packing(args, out) -> int:
    g, _ = _load_graph(args)
    rep = packing_report(g)
    if args.json:
        print(_dump_json(rep.as_dict()), file=out)
        return EXIT_OK
    frac = "undefined (graph has bridges)" if rep.packing_fraction is None else str(rep.packing_fraction)
    print(f"vertices           {rep.vertex_count}", file=out)
    print(f"spanning trees     {rep.tree_count}", file=out)
    print(f"det G              {rep.gram_det}", file=out)
    print(f"invariant factors  {' '.join(map(str, rep.invariant_factors)) or '(none)'}", file=out)
    print(f"atom residues      {rep.residue_count if rep.residue_count is not None else 'n/a'}", file=out)
    print(f"packing fraction   {frac}", file=out)
    if rep.bridges:
        print(f"bridges            {' '.join(map(str, rep.bridges))}", file=out)
    return EXIT_OK


def cmd_crystal(args, out) -> int:
    g, _ = _load_graph(args)
    if args.radius < 0:
        raise UsageError("--radius must be >= 0")
    if args.dims is not None and args.format != "obj":
        raise UsageError("--dims only applies to --format obj")
    require_connected(g)
    basis = cycle_basis(g)
    if args.format == "obj":
        m = basis.rank
        dims = min(m, 3) if args.dims is None else args.dims
        if m < 1 or dims not in (2, 3) or dims > m:
            raise UsageError(f"cannot write OBJ in {dims} dimensions for cycle rank {m}")
    ef = embed_fragment(ball(g, basis, args.radius))
    if args.format == "csv":
        atoms, bonds = to_csv(ef)
        if args.out:
            target = FilePath(args.out)
            bond_path = target.with_name(target.stem + "_bonds" + (target.suffix or ".csv"))
            target.write_bytes(atoms)
            bond_path.write_bytes(bonds)
            print(f"wrote {target} and {bond_path}", file=sys.stderr)
        else:
            out.write(atoms.decode())
            out.write("\n")
            out.write(bonds.decode())
        return EXIT_OK
    data = export_fragment(ef, args.format, args.dims)
    if args.out:
        FilePath(args.out).write_bytes(data)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        out.write(data.decode())
    return EXIT_OK


def cmd_aut(args, out) -> int:
    g, _ = _load_graph(args)
    require_connected(g)
    if g.vertex_count > MAX_VERTICES:
        raise UsageError(f"automorphism search is limited to {MAX_VERTICES} vertices")
    basis = cycle_basis(g)
    gens = automorphism_generators(g)
    order = group_order(g)
    transitive = is_arc_transitive(g, gens)
    orbits = arc_orbits(g, gens)
    fixed = fixed_vertices(g, gens)
    records = []
    for f in gens:
        aff = affine_action(basis, canonical_lift(g, basis, f))
        records.append({
            "vertex_perm": list(f.vertex_perm),
            "edge_map": [str(e) for e in f.edge_map],
            "linear": [list(r) for r in aff.linear],
            "translation": _frac(aff.translation),
        })
    report = {
        "order": order,
        "arc_transitive": transitive,
        "arc_orbits": len(orbits),
        "fixed_vertices": fixed,
        "generators": records,
    }
    if args.json:
        print(_dump_json(report), file=out)
        return EXIT_OK
    print(f"|Aut|            {order}", file=out)
    print(f"generators       {len(gens)}", file=out)
    print(f"arc-transitive   {'yes' if transitive else f'no ({len(orbits)} arc orbits)'}", file=out)
    if fixed:
        print(f"fixed vertices   {' '.join(map(str, fixed))} (atoms above them have full stabilizer)", file=out)
    else:
        print("fixed vertices   none (no atom is fixed by a lift of every automorphism)", file=out)
    for k, (f, rec) in enumerate(zip(gens, records)):
        print(f"\ngenerator {k}", file=out)
        print(f"  vertices   {_cycles(f.vertex_perm)}", file=out)
        print(f"  edges      {_edge_moves(f)}", file=out)
        print("  F", file=out)
        for row in rec["linear"]:
            print("    " + " ".join(f"{x:>2}" for x in row), file=out)
        print(f"  t          {' '.join(rec['translation'])}", file=out)
    return EXIT_OK


def _hint_int(hints: dict, key: str, flag, default: int) -> int:
    if flag is not None:
        return flag
    if key in hints:
        try:
            return int(hints[key])
        except ValueError:
            raise UsageError(f"bad '# {key}:' line in graph file") from None
    return default


def _counterexample_dump(g: Graph, radius: int, seed: int, samples: int, check) -> str:
    cx = check.counterexample or {}
    lines = [
        f"counterexample: {check.name}: {check.detail}",
        f"radius: {radius}",
        f"seed: {seed}",
        f"samples: {samples}",
    ]
    if "path" in cx:
        lines.append(f"path: {cx['path_start']}: {cx['path']}")
    for k, v in sorted(cx.items()):
        if k not in ("graph", "path", "path_start"):
            lines.append(f"value {k} = {v}")
    return format_graph(g, "\n".join(lines))


def cmd_verify(args, out) -> int:
    g, hints = _load_graph(args)
    if not is_connected(g):
        raise UsageError("verify needs a connected graph")
    radius = _hint_int(hints, "radius", args.radius, 2)
    seed = _hint_int(hints, "seed", args.seed, 0)
    samples = _hint_int(hints, "samples", args.samples, 200)
    if radius < 0 or samples < 0:
        raise UsageError("--radius and --samples must be >= 0")
    path = None
    if args.path is not None or args.start is not None:
        path = Path.parse(args.start or 0, args.path or "")
    elif "path" in hints:
        start, _, word = hints["path"].partition(":")
        try:
            path = Path.parse(int(start), word)
        except ValueError:
            raise UsageError("bad '# path:' line in graph file") from None
    if path is not None:
        g.walk(path)
    report = verify_suite(g, radius, samples=samples, seed=seed)
    if path is not None:
        report.checks.extend(check_path(g, path, bridgeless=not find_bridges(g)))
    if args.json:
        print(_dump_json(report.as_dict()), file=out)
    else:
        for c in report.checks:
            print(c.line(), file=out)
        print(f"{sum(c.passed for c in report.checks)}/{len(report.checks)} checks passed", file=out)
    if report.ok:
        return EXIT_OK
    first = report.failures()[0]
    dump = _counterexample_dump(g, radius, seed, samples, first)
    if args.dump:
        FilePath(args.dump).write_text(dump, "utf-8")
        print(f"counterexample written to {args.dump}", file=sys.stderr)
    elif not args.json:
        print("\n" + dump, end="", file=out)
    return EXIT_FAIL


def cmd_builtin_list(args, out) -> int:
    rows = []
    for name in BUILTIN_NAMES:
        g = builtin_graph(name, 3 if name == "hosohedron" else None)
        label = "hosohedron:N" if name == "hosohedron" else name
        v, e = g.vertex_count, g.edge_count
        rows.append({"name": label, "vertices": v if name != "hosohedron" else 2,
                     "edges": e if name != "hosohedron" else "N",
                     "cycle_rank": e - v + 1 if name != "hosohedron" else "N-1"})
    if args.json:
        print(_dump_json(rows), file=out)
        return EXIT_OK
    print(f"{'name':<20}{'|V|':>5}{'|E|':>6}{'m':>6}", file=out)
    for r in rows:
        print(f"{r['name']:<20}{r['vertices']:>5}{r['edges']:>6}{r['cycle_rank']:>6}", file=out)
    return EXIT_OK


# ------------------------------------------------------------------ parser

def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", nargs="?", help="graph file ('v n' / 'e u w' lines), or - for stdin")
    p.add_argument("--builtin", metavar="NAME[:N]", help="use a bundled graph instead of a file")
    p.add_argument("--json", action="store_true", help="print the report as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topocrystal",
        description="Topological crystals of finite graphs in exact arithmetic.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("info", help="vertex/edge counts, cycle rank, connectivity, bridges")
    _add_source(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("trees", help="spanning-tree count by two determinant routes")
    _add_source(p)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("packing", help="spanning trees, invariant factors and packing fraction")
    _add_source(p)
    p.set_defaults(func=cmd_packing)

    p = sub.add_parser("crystal", help="export a ball of the crystal")
    _add_source(p)
    p.add_argument("--radius", type=int, default=2, help="ball radius in bonds (default 2)")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--dims", type=int, choices=(2, 3), help="OBJ projection dimension (default min(m, 3))")
    p.add_argument("--out", help="output file; csv also writes <stem>_bonds.csv next to it")
    p.set_defaults(func=cmd_crystal)

    p = sub.add_parser("aut", help="automorphism group and its affine action")
    _add_source(p)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("verify", help="run the invariant suite")
    _add_source(p)
    p.add_argument("--radius", type=int, help="ball radius (default 2)")
    p.add_argument("--samples", type=int, help="random samples per check (default 200)")
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--path", help="also check this path, e.g. '+0 -2 +1'")
    p.add_argument("--start", type=int, help="start vertex of --path (default 0)")
    p.add_argument("--dump", help="write the counterexample to this file instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("builtin-list", help="list bundled graphs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_builtin_list)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"{parser.prog} {args.command}: error: {exc}\n")
    except GraphError as exc:
        parser.exit(EXIT_USAGE, f"{parser.prog} {args.command}: error: {exc}\n")
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
