"""Graph predicates: components, bipartiteness, induced patterns, complements."""

import pytest
from hypothesis import given, settings, strategies as st

from factgraph.errors import ValidationError
from factgraph.graph_analysis import (SimpleGraph, bipartite_structure,
                                      components, cycle_graph,
                                      equals_complement_of, find_induced,
                                      k14_degree_multiset_scan, star_graph)


def path(n):
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def test_simple_graph_validation():
    with pytest.raises(ValidationError):
        SimpleGraph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(ValidationError):
        SimpleGraph(2, (0b01, 0b10))  # self-loop


def test_components_empty_graph():
    c = components(SimpleGraph(0, ()))
    assert c.components == () and c.isolated == ()
    assert c.is_connected


def test_components_with_isolated():
    g = SimpleGraph.from_edges(4, [(0, 1)])
    c = components(g)
    assert c.components == ((0, 1),)
    assert c.isolated == (2, 3)
    assert not c.is_connected


def test_components_partition_vertices():
    g = SimpleGraph.from_edges(7, [(0, 1), (1, 2), (4, 5)])
    c = components(g)
    seen = sorted(v for comp in c.components for v in comp) + sorted(c.isolated)
    assert sorted(seen) == list(range(7))


def test_single_vertex_connected():
    c = components(SimpleGraph(1, (0,)))
    assert c.is_connected and c.isolated == (0,)


def test_triangle_not_bipartite_with_witness():
    b = bipartite_structure(cycle_graph(3))
    assert not b.is_bipartite
    assert b.odd_cycle is not None and len(b.odd_cycle) % 2 == 1


def test_path_is_complete_bipartite_k12():
    b = bipartite_structure(path(3))
    assert b.is_bipartite
    assert b.is_complete_bipartite
    assert sorted(map(len, b.parts)) == [1, 2]
    assert 0 in b.parts[0]


def test_square_bipartite_not_complete_plus():
    b = bipartite_structure(cycle_graph(4))
    assert b.is_bipartite and b.is_complete_bipartite  # C4 = K_{2,2}
    b5 = bipartite_structure(cycle_graph(5))
    assert not b5.is_bipartite


def test_empty_graph_bipartite_but_not_complete():
    b = bipartite_structure(SimpleGraph(0, ()))
    assert b.is_bipartite
    assert not b.is_complete_bipartite


def test_find_star_patterns():
    claw = star_graph(3)
    assert find_induced(claw, "claw") == (0, 1, 2, 3)
    assert find_induced(claw, "K14") is None
    k14 = star_graph(4)
    assert find_induced(k14, "K14") == (0, 1, 2, 3, 4)
    assert find_induced(k14, "claw") is not None


def test_find_triangle_and_square():
    assert find_induced(cycle_graph(3), "C3") == (0, 1, 2)
    assert find_induced(cycle_graph(4), "C4") is not None
    assert find_induced(cycle_graph(4), "C3") is None
    # C5 has no induced C4
    assert find_induced(cycle_graph(5), "C4") is None
    assert find_induced(cycle_graph(6), "C4") is None


def test_square_in_k23():
    k23 = SimpleGraph.from_edges(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    occ = find_induced(k23, "C4")
    assert occ is not None


def test_no_pattern_in_empty_graph():
    g = SimpleGraph(0, ())
    for name in ("claw", "K14", "C3", "C4"):
        assert find_induced(g, name) is None


def test_generic_pattern_and_size_cap():
    p4 = path(4)
    host = SimpleGraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    assert find_induced(host, p4) is not None
    with pytest.raises(ValidationError):
        find_induced(host, path(7))


def test_find_induced_requires_induced_not_subgraph():
    # K4 contains C4 as a subgraph but not as an induced subgraph
    k4 = SimpleGraph.from_edges(4, [(i, j) for i in range(4)
                                    for j in range(i + 1, 4)])
    assert find_induced(k4, "C4") is None


def test_k14_multiset_scan_agrees_on_small_graphs():
    hosts = [star_graph(4), star_graph(3), cycle_graph(5), path(6),
             SimpleGraph.from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4),
                                        (0, 5), (1, 2)])]
    for g in hosts:
        native = find_induced(g, "K14") is None
        parity = k14_degree_multiset_scan(g) is None
        assert native == parity


def test_complement_matching():
    # K3 is the complement of 3K1
    ok, mapping = equals_complement_of(cycle_graph(3), [(3, 1)])
    assert ok and sorted(mapping) == [0, 1, 2]
    # C4 = K_{2,2} is the complement of 2K2
    ok, _ = equals_complement_of(cycle_graph(4), [(2, 2)])
    assert ok
    # C5 is self-complementary but not multipartite
    ok, _ = equals_complement_of(cycle_graph(5), [(1, 2), (1, 3)])
    assert not ok
    with pytest.raises(ValidationError):
        equals_complement_of(cycle_graph(4), [(1, 3)])  # size mismatch


def test_complete_bipartite_implies_no_triangle():
    for g in (path(3), cycle_graph(4), star_graph(5)):
        b = bipartite_structure(g)
        if b.is_complete_bipartite:
            assert b.is_bipartite
            assert find_induced(g, "C3") is None


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=0, max_value=8))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                edges.append((i, j))
    return SimpleGraph.from_edges(n, edges)


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_property_components_partition(g):
    c = components(g)
    seen = sorted(v for comp in c.components for v in comp) + list(c.isolated)
    assert sorted(seen) == list(range(g.n))
    for comp in c.components:
        assert len(comp) >= 2


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_property_bipartite_no_odd_cycle_within_parts(g):
    b = bipartite_structure(g)
    if b.is_bipartite:
        for part in b.parts:
            for i in part:
                for j in part:
                    if i < j:
                        assert not g.has_edge(i, j)
    else:
        cyc = b.odd_cycle
        assert len(cyc) % 2 == 1
        for a, bb in zip(cyc, cyc[1:] + cyc[:1]):
            assert g.has_edge(a, bb)


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_property_k14_scan_parity(g):
    native = find_induced(g, "K14") is None
    parity = k14_degree_multiset_scan(g) is None
    assert native == parity
