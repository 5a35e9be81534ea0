"""Factorization-graph construction, reduction, embedding, and export."""

import json

import pytest

from factgraph.catalog import (abelian_of_type, cyclic, frobenius,
                               generalized_quaternion, sym)
from factgraph.errors import ValidationError
from factgraph.factor_graph import (build_graph, export_graph,
                                    quotient_graph_embedding, reduce_graph)
from factgraph.graph_analysis import components
from factgraph.subgroups import enumerate_subgroups, product_profile


def graph_of(g, kind="full"):
    lat = enumerate_subgroups(g, max_order=256)
    return g, lat, build_graph(g, lat, kind)


def test_f_q8_is_triangle():
    _, _, F = graph_of(generalized_quaternion(8))
    assert F.vertex_count == 3
    assert F.edge_count == 3
    assert sorted(F.subgroup(i).order for i in range(3)) == [4, 4, 4]


def test_f_c8_is_empty():
    _, _, F = graph_of(cyclic(8))
    assert F.vertex_count == 0
    assert F.edge_count == 0


def test_f_c6_is_single_edge():
    _, _, F = graph_of(cyclic(6))
    assert F.vertex_count == 2
    assert F.edge_count == 1


def test_f_c12_is_path_centered_at_c4():
    _, _, F = graph_of(cyclic(12))
    assert F.vertex_count == 3
    assert F.edge_count == 2
    center = next(i for i in range(3) if F.degree(i) == 2)
    assert F.subgroup(center).order == 4


def test_vertex_set_is_exactly_non_frattini_proper():
    for g in (cyclic(12), generalized_quaternion(16), sym(4)):
        g, lat, F = graph_of(g)
        phi = lat.frattini()
        expected = [i for i in lat.proper_ids()
                    if lat.subgroup(i).members & ~phi.members]
        assert list(F.vertices) == expected


def test_comparable_vertices_never_adjacent():
    for g in (cyclic(24), sym(4), abelian_of_type(4, 4)):
        g, lat, F = graph_of(g)
        for i in range(F.vertex_count):
            for j in range(i + 1, F.vertex_count):
                a, b = F.subgroup(i), F.subgroup(j)
                if a.contains(b) or b.contains(a):
                    assert not F.adjacent(i, j)


def test_edges_match_product_profile():
    g, lat, F = graph_of(sym(4))
    for i in range(F.vertex_count):
        for j in range(i + 1, F.vertex_count):
            prof = product_profile(F.subgroup(i), F.subgroup(j))
            assert F.adjacent(i, j) == prof.covers


def test_triangle_is_triple_factorization():
    from factgraph.graph_analysis import find_induced
    g, lat, F = graph_of(generalized_quaternion(8))
    tri = find_induced(F.simple(), "C3")
    assert tri is not None
    a, b, c = (F.subgroup(v) for v in tri)
    assert product_profile(a, b).covers
    assert product_profile(b, c).covers
    assert product_profile(c, a).covers


def test_reduce_keeps_triangle():
    _, _, F = graph_of(generalized_quaternion(8))
    R = reduce_graph(F)
    assert R.vertex_count == 3 and R.edge_count == 3
    assert R.kind == "reduced"


def test_reduce_drops_s4_double_transposition_vertices():
    g, lat, F = graph_of(sym(4))
    R = reduce_graph(F)
    dropped = set(F.vertices) - set(R.vertices)
    assert len(dropped) == 3
    for sid in dropped:
        s = lat.subgroup(sid)
        assert s.order == 2
        # contained in the unique order-12 subgroup
        a4 = next(i for i in range(len(lat)) if lat.subgroup(i).order == 12)
        assert lat.subgroup(a4).contains(s)


def test_reduced_frobenius_21_star():
    g = frobenius(7, 3)
    lat = enumerate_subgroups(g)
    F = build_graph(g, lat)
    R = reduce_graph(F)
    assert R.vertex_count == F.vertex_count == 8  # no isolated vertices
    center = next(i for i in range(8) if R.degree(i) == 7)
    assert R.subgroup(center).order == 7


def test_reduce_requires_full_kind():
    _, _, F = graph_of(cyclic(6), kind="gap_parity")
    with pytest.raises(ValidationError):
        reduce_graph(F)


def test_gap_parity_vertices_and_isolation():
    g, lat, P = graph_of(generalized_quaternion(8), kind="gap_parity")
    assert P.vertex_count == 5  # trivial, center, three C4
    phi = lat.frattini()
    for i in range(P.vertex_count):
        s = P.subgroup(i)
        if s.members & ~phi.members == 0:
            assert P.degree(i) == 0  # Frattini-contained vertices are isolated


def test_neighbor_absorption_samples():
    from factgraph.bitset import iter_bits
    from factgraph.groups import closure_mask
    for grp in (cyclic(24), generalized_quaternion(16), sym(4)):
        g, lat, F = graph_of(grp)
        phi = lat.frattini()
        for a in range(F.vertex_count):
            ha = F.subgroup(a)
            mask, _ = closure_mask(g.mul, list(iter_bits(ha.members | phi.members)))
            pos = F.position_of[lat.id_of(mask)]
            for b in iter_bits(F.adjacency[a]):
                assert F.adjacent(pos, b)


def test_quotient_embedding_trivial_frattini():
    g = sym(4)
    lat = enumerate_subgroups(g)
    emb = quotient_graph_embedding(g, lat)
    assert emb.verified
    assert emb.quotient.order == 24
    assert len(emb.pairs) == build_graph(g, lat).vertex_count


def test_quotient_embedding_c12():
    g = cyclic(12)
    lat = enumerate_subgroups(g)
    emb = quotient_graph_embedding(g, lat)
    assert emb.quotient.order == 6
    assert emb.quotient_graph.vertex_count == 2
    images = [lat.subgroup(gid).order for _, gid in emb.pairs]
    assert sorted(images) == [4, 6]
    F = build_graph(g, lat)
    pos = [F.position_of[gid] for _, gid in emb.pairs]
    assert F.adjacent(pos[0], pos[1])


def test_quotient_embedding_q8():
    g = generalized_quaternion(8)
    lat = enumerate_subgroups(g)
    emb = quotient_graph_embedding(g, lat)
    assert emb.quotient_graph.vertex_count == 3
    assert emb.quotient_graph.edge_count == 3
    assert len(emb.pairs) == 3


def test_export_json_c6():
    _, _, F = graph_of(cyclic(6))
    doc = json.loads(export_graph(F, "json"))
    assert doc["group"] == "C6"
    assert doc["kind"] == "full"
    assert len(doc["vertices"]) == 2
    assert doc["edges"] == [[0, 1]]
    assert {v["order"] for v in doc["vertices"]} == {2, 3}
    for v in doc["vertices"]:
        assert set(v) == {"id", "order", "members", "label"}


def test_export_json_empty_graph():
    _, _, F = graph_of(cyclic(8))
    doc = json.loads(export_graph(F, "json"))
    assert doc["vertices"] == [] and doc["edges"] == []


def test_export_dot_q8():
    _, _, F = graph_of(generalized_quaternion(8))
    dot = export_graph(F, "dot")
    assert dot.count(" -- ") == 3
    assert dot.count("label=") == 3
    assert dot.startswith('graph "Q8"')


def test_export_is_deterministic():
    a = export_graph(graph_of(sym(4))[2], "json")
    b = export_graph(graph_of(sym(4))[2], "json")
    assert a == b
    assert export_graph(graph_of(sym(4))[2], "dot") == \
        export_graph(graph_of(sym(4))[2], "dot")


def test_export_rejects_unknown_format():
    _, _, F = graph_of(cyclic(6))
    with pytest.raises(ValidationError):
        export_graph(F, "xml")
