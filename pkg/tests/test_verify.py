"""Isomorphism, Frobenius detection, theorem checkers, and the corpus run."""

import pytest

from factgraph.catalog import (abelian_of_type, alt, cyclic, dihedral,
                               elementary_abelian, frobenius,
                               generalized_quaternion, k14_family, metacyclic,
                               semidihedral, sixteen_group, sym)
from factgraph.factor_graph import build_graph
from factgraph.groups import direct_product, structure_probe
from factgraph.subgroups import enumerate_subgroups
from factgraph.verify import (CorpusConfig, are_isomorphic, build_corpus,
                              check_bipartite_theorem, check_claw_corollary,
                              check_connectivity_theorem, check_k14_theorem,
                              check_square_lemma, check_squarefree_theorem,
                              frobenius_status, gap_parity_agreement,
                              least_prime_maximal_family, run_corpus,
                              _perfect_branch)


def ctx(g):
    lat = enumerate_subgroups(g, max_order=256)
    return g, lat, build_graph(g, lat)


# ---------------------------------------------------------------------------
# isomorphism


def test_isomorphic_to_itself():
    g = sym(3)
    ok, phi = are_isomorphic(g, g)
    assert ok and phi == tuple(range(6))


def test_q8_vs_d8():
    ok, _ = are_isomorphic(generalized_quaternion(8), dihedral(8))
    assert not ok  # 1 vs 5 involutions


def test_c4_vs_klein():
    assert not are_isomorphic(cyclic(4), elementary_abelian(2, 2))[0]


def test_witness_is_isomorphism():
    a = metacyclic(3, 1, 2, 1, 2)  # S3 presentation-style
    b = sym(3)
    ok, phi = are_isomorphic(a, b)
    assert ok
    for x in range(6):
        for y in range(6):
            assert phi[a.mul[x][y]] == b.mul[phi[x]][phi[y]]


def test_same_histogram_different_groups():
    # M16 and C8xC2 share the element-order histogram but are not isomorphic
    from factgraph.catalog import modular_maximal_cyclic
    m16 = modular_maximal_cyclic(16)
    c8c2 = abelian_of_type(8, 2)
    assert m16.order_histogram() == c8c2.order_histogram()
    assert not are_isomorphic(m16, c8c2)[0]


def test_isomorphism_symmetric_transitive_on_small_sample():
    groups = [cyclic(8), abelian_of_type(4, 2), elementary_abelian(2, 3),
              dihedral(8), generalized_quaternion(8)]
    results = {}
    for i, a in enumerate(groups):
        for j, b in enumerate(groups):
            results[i, j] = are_isomorphic(a, b)[0]
    for i in range(5):
        assert results[i, i]
        for j in range(5):
            assert results[i, j] == results[j, i]
            for k in range(5):
                if results[i, j] and results[j, k]:
                    assert results[i, k]


# ---------------------------------------------------------------------------
# Frobenius detection


def test_frobenius_s3():
    fs = frobenius_status(sym(3))
    assert fs.is_frobenius and fs.is_minimal
    assert fs.kernel.order == 3 and fs.complement.order == 2


def test_frobenius_a4():
    fs = frobenius_status(alt(4))
    assert fs.is_frobenius and fs.is_minimal
    assert fs.kernel.order == 4 and fs.complement.order == 3


def test_frobenius_f20_not_minimal():
    fs = frobenius_status(frobenius(5, 4))
    assert fs.is_frobenius
    assert fs.is_minimal is False  # contains D10


def test_q8_not_frobenius():
    fs = frobenius_status(generalized_quaternion(8))
    assert not fs.is_frobenius
    assert fs.kernel is None


def test_frobenius_kernel_complement_arithmetic():
    for g in (sym(3), frobenius(7, 3), frobenius(5, 4), alt(4),
              frobenius(13, 4)):
        fs = frobenius_status(g)
        assert fs.is_frobenius
        from math import gcd
        assert gcd(fs.kernel.order, fs.complement.order) == 1
        assert fs.kernel.order * fs.complement.order == g.order


# ---------------------------------------------------------------------------
# individual checkers


def test_connectivity_c12_witness():
    g, lat, F = ctx(cyclic(12))
    v = check_connectivity_theorem(g, lat, F)
    assert v.status == "holds"
    assert v.witness["no_isolated"] and v.witness["connected"]
    assert sorted(v.witness["family_indexes"]) == [2, 3]


def test_connectivity_s4_all_false():
    g, lat, F = ctx(sym(4))
    v = check_connectivity_theorem(g, lat, F)
    assert v.status == "holds"
    assert not v.witness["no_isolated"]
    assert not v.witness["connected"]
    assert v.witness["least_prime_family"] is None


def test_connectivity_q8_two_maximals():
    g, lat, F = ctx(generalized_quaternion(8))
    v = check_connectivity_theorem(g, lat, F)
    assert v.status == "holds"
    assert v.witness["family_indexes"] == [2, 2]


def test_least_prime_family_intersects_in_frattini():
    for grp in (cyclic(12), generalized_quaternion(16), cyclic(30), sym(3)):
        g, lat, F = ctx(grp)
        fam = least_prime_maximal_family(g, lat)
        assert fam is not None
        inter = g.full_mask
        for i in fam:
            inter &= lat.subgroup(i).members
        assert inter == lat.frattini().members


def test_bipartite_checker_families():
    g, lat, F = ctx(cyclic(6))
    v = check_bipartite_theorem(g, lat, F)
    assert v.status == "holds" and v.witness["family"].startswith("cyclic-two")

    g, lat, F = ctx(frobenius(5, 2))  # D10
    v = check_bipartite_theorem(g, lat, F)
    assert v.status == "holds"
    assert v.witness["family"].startswith("metacyclic")
    assert sorted(map(len, v.witness["parts"])) == [1, 5]

    g, lat, F = ctx(generalized_quaternion(8))
    v = check_bipartite_theorem(g, lat, F)
    assert v.status == "holds" and v.witness["family"] is None

    g, lat, F = ctx(cyclic(16))
    v = check_bipartite_theorem(g, lat, F)
    assert v.status == "holds"
    assert v.witness["complete_bipartite"] == "vacuous-empty-graph"


def test_k14_checker():
    g, lat, F = ctx(abelian_of_type(4, 4))
    v = check_k14_theorem(g, lat, F)
    assert v.status == "holds" and v.witness["k14"] is None

    g, lat, F = ctx(sixteen_group(1))
    v = check_k14_theorem(g, lat, F)
    assert v.status == "holds" and v.witness["k14"] is not None
    assert v.witness["family"] is None

    g, lat, F = ctx(k14_family(3))
    v = check_k14_theorem(g, lat, F)
    assert v.status == "holds" and v.witness["k14"] is None
    assert v.witness["case"] == "non-nilpotent"

    g, lat, F = ctx(cyclic(16))  # non-factorizable
    v = check_k14_theorem(g, lat, F)
    assert v.status == "skipped"
    assert v.witness["reason"] == "non-factorizable"


def test_claw_checker_on_agreeing_groups():
    g, lat, F = ctx(generalized_quaternion(8))
    v = check_claw_corollary(g, lat, F)
    assert v.status == "holds" and v.witness["claw"] is None

    g, lat, F = ctx(cyclic(24))
    v = check_claw_corollary(g, lat, F)
    assert v.status == "holds"
    assert v.witness["claw"] is not None  # claw exists, not in the family list
    assert v.witness["family"] is None

    g, lat, F = ctx(cyclic(30))
    v = check_claw_corollary(g, lat, F)
    assert v.status == "holds" and v.witness["claw"] is None


def test_claw_corollary_counterexample_cp_2_2():
    """Documented source defect: C_p x C2 x C2 is listed claw-free but its
    graph contains an induced claw (center a C6-type subgroup)."""
    g, lat, F = ctx(abelian_of_type(3, 2, 2))
    v = check_claw_corollary(g, lat, F)
    assert v.status == "fails"
    assert v.witness["claw"] is not None
    assert v.witness["family"] == "cpx2x2(3,)"


def test_square_lemma_c210():
    g = cyclic(210)
    lat = enumerate_subgroups(g, max_order=256)
    sylows = [next(i for i in range(len(lat)) if lat.subgroup(i).order == p)
              for p in (2, 3, 5, 7)]
    v = check_square_lemma(g, lat, sylows)
    assert v.status == "holds"
    assert v.witness["explicit_is_square"]
    assert len(v.witness["explicit_set"]) == 4
    assert v.witness["search_found"] is not None


def test_square_lemma_c2_c2_c3_c5():
    g = abelian_of_type(2, 2, 3, 5)
    lat = enumerate_subgroups(g)
    twos = [i for i in range(len(lat)) if lat.subgroup(i).order == 2][:2]
    three = next(i for i in range(len(lat)) if lat.subgroup(i).order == 3)
    five = next(i for i in range(len(lat)) if lat.subgroup(i).order == 5)
    v = check_square_lemma(g, lat, twos + [three, five])
    assert v.status == "holds" and v.witness["explicit_is_square"]


def test_square_lemma_preconditions():
    g = sym(4)
    lat = enumerate_subgroups(g)
    small = [i for i in range(len(lat)) if lat.subgroup(i).order in (3, 8)][:3]
    v = check_square_lemma(g, lat, small)
    assert v.status == "skipped"
    assert "four factors" in v.witness["reason"]

    s3 = sym(3)
    lat3 = enumerate_subgroups(s3)
    twos = [i for i in range(len(lat3)) if lat3.subgroup(i).order == 2]
    three = [i for i in range(len(lat3)) if lat3.subgroup(i).order == 3]
    v = check_square_lemma(s3, lat3, twos + three)
    assert v.status == "skipped"  # the order-2 subgroups do not permute


def test_squarefree_checker_families():
    cases = [
        (frobenius(7, 3), "frattini-by-minimal-frobenius"),
        (dihedral(8), "pgroup-d2-cyclic-frattini"),
        (elementary_abelian(2, 3), "pgroup-d3-maximal-pairs"),
        (cyclic(30), "cpqr"),
        (cyclic(24), "cpkq"),
        (abelian_of_type(3, 3, 5), "cppq"),
        (direct_product(generalized_quaternion(8), cyclic(3)), "q8xcp"),
    ]
    for g, expected in cases:
        g, lat, F = ctx(g)
        st = structure_probe(g)
        v = check_squarefree_theorem(g, lat, F, st)
        assert v.status == "holds", (g.name, v.witness)
        assert v.witness["square"] is None, g.name
        assert any(t.startswith(expected) for t in v.witness["matched"]), \
            (g.name, v.witness["matched"])


def test_squarefree_converse_violation_detection():
    """A group with a square and a family promise must produce a fails."""
    g, lat, F = ctx(abelian_of_type(8, 8))
    st = structure_probe(g)
    good = check_squarefree_theorem(g, lat, F, st)
    assert good.status == "holds"  # square exists, nothing promised
    bad = check_squarefree_theorem(g, lat, F, st, family_hints=("cpkq",))
    assert bad.status == "fails"
    assert bad.witness["violated_family_promises"] == ["cpkq"]


def test_perfect_branch_detector_on_c2_x_a5():
    g = direct_product(cyclic(2), alt(5))
    lat = enumerate_subgroups(g, max_order=128)
    tag = _perfect_branch(g, lat)
    assert tag is not None
    assert tag.params == (60,)
    # non-example: solvable group with a unique normal maximal subgroup
    h = cyclic(9)
    lath = enumerate_subgroups(h)
    assert _perfect_branch(h, lath) is None


def test_gap_parity_agreement_samples():
    for grp in (sym(4), generalized_quaternion(16), cyclic(36),
                abelian_of_type(3, 2, 2)):
        lat = enumerate_subgroups(grp)
        assert gap_parity_agreement(grp, lat)


# ---------------------------------------------------------------------------
# corpus


def test_empty_corpus():
    report = run_corpus(CorpusConfig(max_order=0))
    assert report.corpus == []
    assert report.verdicts == []


def test_corpus_is_deduplicated_and_sorted():
    entries = build_corpus(CorpusConfig(max_order=16))
    names = [e.name for e in entries]
    assert len(names) == len(set(names))
    orders = [e.order for e in entries]
    assert orders == sorted(orders)
    by_name = {e.name: e for e in entries}
    assert "S3" not in by_name or "D6" not in by_name  # isomorphic pair merged


def test_corpus_connectivity_suite_small():
    report = run_corpus(CorpusConfig(max_order=24, suites=("connectivity",)))
    tally = report.tallies["connectivity-equivalence"]
    assert tally["fails"] == 0
    assert tally["holds"] == len(report.corpus)


def test_report_serialization_roundtrip():
    import json
    report = run_corpus(CorpusConfig(max_order=12, suites=("bipartite",)))
    doc = json.loads(report.to_json())
    assert set(doc) == {"config", "corpus", "verdicts", "tallies", "version",
                        "caps"}
    assert len(doc["verdicts"]) == sum(sum(t.values())
                                       for t in doc["tallies"].values())
    text = report.to_text()
    assert "bipartite-classification" in text


def test_parallel_jobs_match_sequential():
    seq = run_corpus(CorpusConfig(max_order=16, suites=("k14",)))
    par = run_corpus(CorpusConfig(max_order=16, suites=("k14",), jobs=2))
    assert [(v.group, v.status) for v in seq.verdicts] == \
        [(v.group, v.status) for v in par.verdicts]


def test_solvability_direction():
    """No corpus group with isolated-free graph is non-solvable."""
    report = run_corpus(CorpusConfig(max_order=60, suites=("connectivity",)))
    from factgraph.verify import realize_recipe
    from factgraph.groups import is_solvable
    by_name = {e.name: e for e in
               build_corpus(CorpusConfig(max_order=60))}
    for v in report.verdicts:
        assert v.status == "holds"
        if v.witness["no_isolated"]:
            assert is_solvable(realize_recipe(by_name[v.group].recipe))
