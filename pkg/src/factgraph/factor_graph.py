"""Graphs on the proper subgroups of a group, adjacency H ~ K iff G = HK.

The ``full`` kind keeps exactly the proper subgroups not contained in the
Frattini subgroup; ``reduced`` additionally drops isolated vertices;
``gap_parity`` keeps every proper subgroup (including Frattini-contained
ones, which are provably isolated) so results can be compared against
subgroup-scan conventions that do not filter them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bitset import iter_bits
from .errors import CertificateError, ValidationError
from .graph_analysis import SimpleGraph
from .groups import GroupTable, quotient_group
from .subgroups import Subgroup, SubgroupLattice, enumerate_subgroups

KINDS = ("full", "reduced", "gap_parity")


class FactorizationGraph:
    """Vertices are subgroup ids of the lattice; adjacency is symmetric
    irreflexive bit-rows indexed by vertex position."""

    __slots__ = ("group", "lattice", "kind", "vertices", "adjacency", "phi_id",
                 "position_of")

    def __init__(self, group, lattice, kind, vertices, adjacency, phi_id):
        self.group = group
        self.lattice = lattice
        self.kind = kind
        self.vertices = tuple(vertices)
        self.adjacency = tuple(adjacency)
        self.phi_id = phi_id
        self.position_of = {sid: i for i, sid in enumerate(self.vertices)}

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def subgroup(self, pos: int) -> Subgroup:
        return self.lattice.subgroup(self.vertices[pos])

    def degree(self, pos: int) -> int:
        return self.adjacency[pos].bit_count()

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def edges(self):
        for i in range(len(self.vertices)):
            row = self.adjacency[i] >> (i + 1)
            for off in iter_bits(row):
                yield i, i + 1 + off

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adjacency) // 2

    def labels(self) -> list[str]:
        return [self.subgroup(i).label() for i in range(len(self.vertices))]

    def simple(self) -> SimpleGraph:
        return SimpleGraph(len(self.vertices), self.adjacency)

    def __repr__(self):
        return (f"<FactorizationGraph {self.kind} of {self.group.name}: "
                f"{self.vertex_count} vertices, {self.edge_count} edges>")


def build_graph(G: GroupTable, lattice: SubgroupLattice,
                kind: str = "full") -> FactorizationGraph:
    """Build the factorization graph of G from its complete lattice.

    Edge rule: H ~ K iff |H||K| = |G|·|H∩K|, the index-formula form of
    G = HK as a set product.
    """
    if kind not in ("full", "gap_parity"):
        raise ValidationError(f"build kind must be 'full' or 'gap_parity', got {kind!r}")
    if lattice.group is not G:
        raise ValidationError("lattice does not belong to this group")
    phi = lattice.frattini()
    vertices = []
    for i in lattice.proper_ids():
        s = lattice.subgroup(i)
        if kind == "full" and s.members & ~phi.members == 0:
            continue  # contained in the Frattini subgroup
        vertices.append(i)
    n = G.order
    masks = [lattice.subgroup(i).members for i in vertices]
    orders = [lattice.subgroup(i).order for i in vertices]
    v = len(vertices)
    adjacency = [0] * v
    for a in range(v):
        ma, oa = masks[a], orders[a]
        row = adjacency[a]
        for b in range(a + 1, v):
            if oa * orders[b] == n * (ma & masks[b]).bit_count():
                row |= 1 << b
                adjacency[b] |= 1 << a
        adjacency[a] = row
    return FactorizationGraph(G, lattice, kind, vertices, adjacency,
                              lattice.frattini_id)


def reduce_graph(F: FactorizationGraph) -> FactorizationGraph:
    """Remove isolated vertices (the reduced graph); requires kind='full'."""
    if F.kind != "full":
        raise ValidationError("reduce_graph expects a full-kind graph")
    keep = [i for i in range(F.vertex_count) if F.adjacency[i]]
    remap = {old: new for new, old in enumerate(keep)}
    adjacency = []
    for old in keep:
        row = 0
        for t in iter_bits(F.adjacency[old]):
            row |= 1 << remap[t]
        adjacency.append(row)
    return FactorizationGraph(F.group, F.lattice, "reduced",
                              [F.vertices[i] for i in keep], adjacency,
                              F.phi_id)


@dataclass(frozen=True)
class QuotientEmbedding:
    """Certificate that F(G/Phi) embeds into F(G) as an induced subgraph."""

    pairs: tuple[tuple[int, int], ...]   # (quotient subgroup id, parent subgroup id)
    quotient: GroupTable
    quotient_lattice: SubgroupLattice
    quotient_graph: FactorizationGraph
    verified: bool


def quotient_graph_embedding(G: GroupTable, lattice: SubgroupLattice,
                             F: FactorizationGraph | None = None,
                             max_order: int | None = None) -> QuotientEmbedding:
    """Map each vertex of F(G/Phi(G)) to its preimage vertex in F(G).

    The map is checked exhaustively to be injective and to preserve both
    edges and non-edges; a failure raises CertificateError since it would
    indicate an implementation bug, never a property of the group.
    """
    if F is None:
        F = build_graph(G, lattice, "full")
    phi = lattice.frattini()
    Q, proj = quotient_group(G, phi.members)
    qlat = enumerate_subgroups(Q, max_order=max_order)
    FQ = build_graph(Q, qlat, "full")
    coset_bits = [0] * Q.order
    for g in range(G.order):
        coset_bits[proj[g]] |= 1 << g
    pairs = []
    for pos in range(FQ.vertex_count):
        qsub = FQ.subgroup(pos)
        pre = 0
        for c in qsub.elements():
            pre |= coset_bits[c]
        gid = lattice.by_mask.get(pre)
        if gid is None:
            raise CertificateError("preimage of a quotient subgroup is missing "
                                   "from the lattice")
        if gid not in F.position_of:
            raise CertificateError("preimage of a quotient vertex is not a vertex")
        pairs.append((FQ.vertices[pos], gid))
    images = [F.position_of[gid] for _, gid in pairs]
    if len(set(images)) != len(images):
        raise CertificateError("quotient embedding is not injective")
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if FQ.adjacent(i, j) != F.adjacent(images[i], images[j]):
                raise CertificateError(
                    f"quotient embedding does not preserve adjacency at pair ({i}, {j})")
    return QuotientEmbedding(tuple(pairs), Q, qlat, FQ, True)


def export_graph(F: FactorizationGraph, fmt: str = "json") -> str:
    """Serialize a graph: undirected DOT, or the JSON interchange schema
    {group, kind, vertices: [{id, order, members, label}], edges: [[i, j]]}.
    Output is byte-stable for identical inputs."""
    if fmt == "json":
        doc = {
            "group": F.group.name,
            "kind": F.kind,
            "vertices": [
                {
                    "id": sid,
                    "order": F.subgroup(pos).order,
                    "members": list(F.subgroup(pos).elements()),
                    "label": F.subgroup(pos).label(),
                }
                for pos, sid in enumerate(F.vertices)
            ],
            "edges": sorted([i, j] for i, j in F.edges()),
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "dot":
        lines = [f'graph "{F.group.name}" {{']
        for pos in range(F.vertex_count):
            s = F.subgroup(pos)
            lines.append(f'  v{pos} [label="{s.label()} ({s.order})"];')
        for i, j in sorted(F.edges()):
            lines.append(f"  v{i} -- v{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValidationError(f"unknown export format {fmt!r}")
