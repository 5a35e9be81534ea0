"""Command-line front end.

Subcommands: ``build`` (emit a graph as DOT or JSON), ``analyze`` (one-group
report), ``verify`` (corpus theorem suites), ``catalog list``.  Exit codes:
0 success / all verdicts hold, 1 usage or parse error, 2 at least one
verdict failed, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .catalog import catalog_group
from .errors import (CapExceeded, FactGraphError, ParseError, ValidationError)
from .factor_graph import build_graph, export_graph, reduce_graph
from .graph_analysis import bipartite_structure, components, find_induced
from .groups import GroupTable, PermutationGenerators, direct_product, \
    group_from_permutations
from .presentations import group_from_presentation, parse_presentation
from .subgroups import enumerate_subgroups
from .verify import (CorpusConfig, check_connectivity_theorem,
                     least_prime_maximal_family, run_corpus)


@dataclass(frozen=True)
class GroupSpec:
    """A parsed group specification; ``text`` is the canonical form."""

    text: str
    atoms: tuple

    def build(self) -> GroupTable:
        tables = [_build_atom(a) for a in self.atoms]
        g = tables[0]
        for t in tables[1:]:
            g = direct_product(g, t)
        g.name = self.text
        return g


_ATOM_PATTERNS = (
    (re.compile(r"^C(\d+)$"), lambda m: ("catalog", "Cyclic", (int(m.group(1)),))),
    (re.compile(r"^D(\d+)$"), lambda m: ("catalog", "Dihedral", (int(m.group(1)),))),
    (re.compile(r"^Q(\d+)$"),
     lambda m: ("catalog", "GeneralizedQuaternion", (int(m.group(1)),))),
    (re.compile(r"^SD(\d+)$"),
     lambda m: ("catalog", "SemiDihedral", (int(m.group(1)),))),
    (re.compile(r"^M(\d+)$"), lambda m: ("catalog", "Modular", (int(m.group(1)),))),
    (re.compile(r"^S(\d+)$"), lambda m: ("catalog", "Sym", (int(m.group(1)),))),
    (re.compile(r"^A(\d+)$"), lambda m: ("catalog", "Alt", (int(m.group(1)),))),
    (re.compile(r"^G([1-4])$"), lambda m: ("catalog", f"G{m.group(1)}", ())),
    (re.compile(r"^E\((\d+),(\d+)\)$"),
     lambda m: ("catalog", "ElementaryAbelian",
                (int(m.group(1)), int(m.group(2))))),
    (re.compile(r"^K14\((\d+)\)$"),
     lambda m: ("catalog", "K14Family", (int(m.group(1)),))),
    (re.compile(r"^Frob\((\d+),(\d+)\)$"),
     lambda m: ("catalog", "Frobenius", (int(m.group(1)), int(m.group(2))))),
    (re.compile(r"^Frob\((\d+),(\d+),(\d+)\)$"),
     lambda m: ("catalog", "Frobenius",
                (int(m.group(1)), int(m.group(2)), int(m.group(3))))),
    (re.compile(r"^Meta\((\d+),(\d+),(\d+),(\d+),(\d+)\)$"),
     lambda m: ("catalog", "Metacyclic", tuple(int(g) for g in m.groups()))),
)


def _split_atoms(text: str) -> list[str]:
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if ch == "x" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced brackets in {text!r}")
    parts.append("".join(cur))
    return parts


def _parse_atom(text: str, offset: int):
    s = text.strip()
    if not s:
        raise ParseError("empty group atom", offset)
    if s.startswith("Perm[") and s.endswith("]"):
        inner = s[5:-1]
        perm_texts = tuple(t.strip() for t in inner.split(";") if t.strip())
        if not perm_texts:
            raise ParseError("Perm[...] needs at least one permutation", offset)
        gens = PermutationGenerators.from_texts(perm_texts)
        canon = "Perm[" + "; ".join(_canonical_cycles(t) for t in perm_texts) + "]"
        return ("perm", gens, canon)
    if s.startswith("Pres[") and s.endswith("]"):
        pres = parse_presentation(s)
        return ("pres", pres, pres.format())
    for pattern, take in _ATOM_PATTERNS:
        m = pattern.match(s)
        if m:
            kind, family, params = take(m)
            return (kind, family, params, s)
    raise ParseError(f"unknown family or malformed atom {s!r}", offset)


def _canonical_cycles(text: str) -> str:
    from .groups import cycle_string, parse_cycles, _perm_from_cycles
    cycles = parse_cycles(text)
    maxpt = max((max(c) for c in cycles), default=1)
    return cycle_string(_perm_from_cycles(cycles, maxpt))


def _build_atom(atom) -> GroupTable:
    if atom[0] == "perm":
        return group_from_permutations(atom[1])
    if atom[0] == "pres":
        return group_from_presentation(atom[1])
    _, family, params, text = atom
    g = catalog_group(family, *params)
    g.name = text
    return g


def parse_group_spec(text: str) -> GroupSpec:
    """Parse the group-spec DSL: catalog atoms joined by ``x``, plus
    ``Perm[...]`` and ``Pres[...]`` literals."""
    atoms = []
    canon_parts = []
    offset = 0
    for part in _split_atoms(text.strip()):
        atom = _parse_atom(part, offset)
        atoms.append(atom)
        canon_parts.append(atom[-1])
        offset += len(part) + 1
    return GroupSpec("x".join(canon_parts), tuple(atoms))


def format_group_spec(spec: GroupSpec) -> str:
    return spec.text


# ---------------------------------------------------------------------------
# ingest


def ingest_group_file(path) -> GroupTable:
    """Load an external group: JSON with ``name`` and exactly one of
    ``perm_generators`` (1-based cycles) or ``cayley_table`` (0-based)."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path.name}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ValidationError(f"{path.name}: top level must be an object")
    name = doc.get("name") or path.stem
    has_perm = "perm_generators" in doc
    has_table = "cayley_table" in doc
    if has_perm == has_table:
        raise ValidationError(
            f"{path.name}: exactly one of perm_generators/cayley_table required")
    if has_perm:
        block = doc["perm_generators"]
        degree = block.get("degree")
        cycles = block.get("cycles")
        if not isinstance(cycles, list):
            raise ValidationError(f"{path.name}: perm_generators.cycles must be a list")
        gens = PermutationGenerators.from_cycles([cycles], degree)
        return group_from_permutations(gens, name=name)
    rows = doc["cayley_table"]
    return GroupTable(rows, name=name, origin=f"ingest:{path.name}")


def _load_ingest_dir(directory):
    tables = []
    for p in sorted(Path(directory).glob("*.json")):
        g = ingest_group_file(p)
        tables.append((g.name, tuple(tuple(r) for r in g.mul)))
    return tuple(tables)


# ---------------------------------------------------------------------------
# commands


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _make_parser() -> _Parser:
    parser = _Parser(prog="factgraph",
                     description="Factorization graphs of finite groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build and export a graph")
    p_build.add_argument("spec")
    p_build.add_argument("--kind", choices=("full", "reduced", "gap-parity"),
                         default="full")
    p_build.add_argument("--format", choices=("dot", "json"), default="json")
    p_build.add_argument("--out")

    p_an = sub.add_parser("analyze", help="one-group analysis report")
    p_an.add_argument("spec")

    p_ver = sub.add_parser("verify", help="run theorem suites over the corpus")
    p_ver.add_argument("--suite", default="all",
                       choices=("all", "connectivity", "bipartite", "k14",
                                "claw", "square"))
    p_ver.add_argument("--max-order", type=int, default=64)
    p_ver.add_argument("--ingest")
    p_ver.add_argument("--report")
    p_ver.add_argument("--jobs", type=int, default=1)

    p_cat = sub.add_parser("catalog", help="catalog operations")
    p_cat.add_argument("action", choices=("list",))
    return parser


def _cmd_build(args) -> int:
    spec = parse_group_spec(args.spec)
    g = spec.build()
    lattice = enumerate_subgroups(g)
    graph = build_graph(g, lattice,
                        "gap_parity" if args.kind == "gap-parity" else "full")
    if args.kind == "reduced":
        graph = reduce_graph(graph)
    text = export_graph(graph, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_analyze(args) -> int:
    spec = parse_group_spec(args.spec)
    g = spec.build()
    lattice = enumerate_subgroups(g)
    graph = build_graph(g, lattice)
    sg = graph.simple()
    phi = lattice.frattini()
    out = []
    out.append(f"group: {g.name} (order {g.order})")
    out.append(f"frattini subgroup: {phi.label()} (order {phi.order})")
    out.append(f"graph: {graph.vertex_count} vertices, {graph.edge_count} edges")
    comp = components(sg)
    iso_labels = [graph.subgroup(v).label() for v in comp.isolated]
    out.append(f"connected: {'yes' if comp.is_connected else 'no'}; "
               f"isolated vertices: {', '.join(iso_labels) or 'none'}")
    bip = bipartite_structure(sg)
    if bip.is_bipartite:
        out.append(f"bipartite: yes; complete bipartite: "
                   f"{'yes' if bip.is_complete_bipartite else 'no'}")
    else:
        cyc = " - ".join(graph.subgroup(v).label() for v in bip.odd_cycle)
        out.append(f"bipartite: no (odd cycle: {cyc})")
    for title, pattern in (("triangle (triple factorization)", "C3"),
                           ("claw", "claw"), ("K_{1,4}", "K14"),
                           ("induced square", "C4")):
        occ = find_induced(sg, pattern)
        if occ is None:
            out.append(f"{title}: none")
        else:
            out.append(f"{title}: " + " - ".join(graph.subgroup(v).label()
                                                 for v in occ))
    family = least_prime_maximal_family(g, lattice)
    if family is None:
        out.append("least-prime maximal family meeting in the frattini subgroup: none")
    else:
        desc = ", ".join(f"{lattice.subgroup(i).label()} (index "
                         f"{g.order // lattice.subgroup(i).order})" for i in family)
        out.append(f"least-prime maximal family meeting in the frattini subgroup: "
                   f"{desc or 'empty family'}")
    verdict = check_connectivity_theorem(g, lattice, graph)
    out.append(f"connectivity equivalence: {verdict.status}")
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def _cmd_verify(args) -> int:
    ingest = _load_ingest_dir(args.ingest) if args.ingest else ()
    config = CorpusConfig(max_order=args.max_order,
                          two_power_max=min(args.max_order, 64),
                          suites=(args.suite,), jobs=args.jobs,
                          ingest_tables=ingest)
    report = run_corpus(config)
    sys.stdout.write(report.to_text())
    if args.report:
        Path(args.report).write_text(report.to_json())
    return 2 if report.has_failures else 0


_CATALOG_SPECS = (
    "C12", "C30", "C4xC2", "C4xC4", "E(2,3)", "D8", "D10", "Q8", "Q16",
    "SD16", "M16", "S3", "S4", "A4", "A5", "G1", "G2", "G3", "G4",
    "K14(1)", "K14(2)", "K14(3)", "Meta(5,1,2,1,4)", "Frob(7,3)",
    "Perm[(1,2); (1,2,3,4)]", "Pres[a,b | a^4, a^2*b^-2, b^-1*a*b*a]",
)


def _cmd_catalog(args) -> int:
    for spec in _CATALOG_SPECS:
        print(spec)
    return 0


def run_command(argv) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "catalog":
            return _cmd_catalog(args)
        return 1
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except FactGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
