"""Machine checks for the classification statements, and the corpus runner.

Each checker computes both sides of a stated equivalence independently (the
graph side by direct search, the group side by family matching through
isomorphism or presentation tests) and records a verdict with witnesses.
A ``fails`` verdict is a reproducible counterexample report, never an
exception.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from time import perf_counter

from . import __version__
from .arith import element_of_order, factor_multiset, is_prime
from .bitset import iter_bits
from .catalog import catalog_group, catalog_presentation, cyclic, \
    generalized_quaternion
from .errors import CapExceeded, ValidationError
from .factor_graph import FactorizationGraph, build_graph
from .graph_analysis import (bipartite_structure, components, find_induced,
                             k14_degree_multiset_scan)
from .groups import (GroupTable, StructureSummary, abelian_invariants,
                     center_mask, closure_mask, derived_series,
                     direct_product, is_solvable, min_generators,
                     quotient_group, structure_probe)
from .presentations import satisfies_presentation
from .subgroups import (Subgroup, SubgroupLattice, enumerate_subgroups,
                        is_factorizable, product_profile, product_set_mask)


@dataclass(frozen=True)
class FamilyTag:
    """A matched classification family, with its parameters."""

    name: str
    params: tuple = ()

    def describe(self) -> str:
        return self.name if not self.params else f"{self.name}{self.params}"


@dataclass
class TheoremVerdict:
    theorem: str
    group: str
    status: str                 # "holds" | "fails" | "skipped"
    witness: dict | None
    seconds: float


SUITES = ("connectivity", "bipartite", "k14", "claw", "square")


# ---------------------------------------------------------------------------
# isomorphism


def are_isomorphic(G: GroupTable, H: GroupTable):
    """Isomorphism test with witness map.

    A quick invariant screen (order, abelianness, element-order histogram,
    center and derived sizes) rejects most pairs; survivors go through
    backtracking over images of a minimal generating tuple of G, extended
    by closure and verified on all pairs.
    """
    if G is H:
        return True, tuple(range(G.order))
    if G.order != H.order:
        return False, None
    if G.order == 1:
        return True, (0,)
    if G.is_abelian() != H.is_abelian():
        return False, None
    if G.order_histogram() != H.order_histogram():
        return False, None
    if center_mask(G).bit_count() != center_mask(H).bit_count():
        return False, None
    if [m.bit_count() for m in derived_series(G)] != \
            [m.bit_count() for m in derived_series(H)]:
        return False, None

    n = G.order
    _, gens = min_generators(G)
    parent = [-1] * n
    via = [-1] * n
    bfs = [0]
    seen = 1
    for x in bfs:
        for gi, g in enumerate(gens):
            y = G.mul[x][g]
            if not seen >> y & 1:
                seen |= 1 << y
                parent[y] = x
                via[y] = gi
                bfs.append(y)

    h_orders = H.element_orders()
    g_orders = G.element_orders()
    reps = _element_class_reps(H)
    cand0 = [h for h in reps if h_orders[h] == g_orders[gens[0]]]
    pools = [cand0] + [[h for h in range(n) if h_orders[h] == g_orders[g]]
                       for g in gens[1:]]

    images = [0] * len(gens)

    def try_map():
        phi = [0] * n
        used = 1
        for y in bfs[1:]:
            v = H.mul[phi[parent[y]]][images[via[y]]]
            if used >> v & 1:
                return None
            used |= 1 << v
            phi[y] = v
        for a in range(n):
            ra, pa = G.mul[a], phi[a]
            for b in range(n):
                if phi[ra[b]] != H.mul[pa][phi[b]]:
                    return None
        return phi

    def search(depth):
        if depth == len(gens):
            return try_map()
        for cand in pools[depth]:
            images[depth] = cand
            r = search(depth + 1)
            if r is not None:
                return r
        return None

    phi = search(0)
    if phi is None:
        return False, None
    return True, tuple(phi)


def _element_class_reps(H: GroupTable):
    reps = []
    seen = 0
    gens = H.generating_set()
    for x in range(H.order):
        if seen >> x & 1:
            continue
        orbit = [x]
        omask = 1 << x
        while orbit:
            t = orbit.pop()
            for g in gens:
                c = H.conjugate(t, g)
                if not omask >> c & 1:
                    omask |= 1 << c
                    orbit.append(c)
        seen |= omask
        reps.append(x)
    return reps


# ---------------------------------------------------------------------------
# subgroup materialization, normal closures, Frobenius detection


def subgroup_table(G: GroupTable, members: int, name=None) -> GroupTable:
    """Materialize a subgroup (given by member mask) as its own table."""
    elems = list(iter_bits(members))
    index = {e: i for i, e in enumerate(elems)}
    mul = [[index[G.mul[a][b]] for b in elems] for a in elems]
    labels = [G.labels[e] for e in elems]
    return GroupTable(mul, labels, name=name or f"{G.name}|{len(elems)}",
                      origin="subgroup", check_associativity=False)


def normal_closure_mask(G: GroupTable, x: int) -> int:
    orbit = [x]
    omask = 1 << x
    gens = G.generating_set()
    while orbit:
        t = orbit.pop()
        for g in gens:
            c = G.conjugate(t, g)
            if not omask >> c & 1:
                omask |= 1 << c
                orbit.append(c)
    mask, _ = closure_mask(G.mul, list(iter_bits(omask)))
    return mask


@dataclass(frozen=True)
class FrobeniusStatus:
    is_frobenius: bool
    kernel: Subgroup | None
    complement: Subgroup | None
    is_minimal: bool | None


def frobenius_status(G: GroupTable, lattice: SubgroupLattice | None = None,
                     check_minimal: bool = True) -> FrobeniusStatus:
    """Detect a Frobenius structure by the definition-level scan.

    Searches for a proper nontrivial normal N and a complement H with
    N ∩ H = 1, NH = G, and every nontrivial element of H acting without
    fixed points on N by conjugation.  Minimality recursively checks that
    no proper subgroup is itself Frobenius.
    """
    if lattice is None:
        lattice = enumerate_subgroups(G)
    n = G.order
    found = None
    for ni in lattice.proper_ids():
        if not lattice.normal[ni]:
            continue
        N = lattice.subgroup(ni)
        if N.order == 1:
            continue
        target = n // N.order
        for hi in lattice.proper_ids():
            H = lattice.subgroup(hi)
            if H.order != target or (H.members & N.members) != 1:
                continue
            if _acts_freely(G, H, N):
                found = (N, H)
                break
        if found:
            break
    if found is None:
        return FrobeniusStatus(False, None, None, None)
    N, H = found
    minimal = None
    if check_minimal:
        minimal = True
        cache: dict[int, bool] = {}
        for i in lattice.proper_ids():
            s = lattice.subgroup(i)
            if s.order < 6:
                continue
            if _is_frobenius_subtable(G, s.members, cache):
                minimal = False
                break
    return FrobeniusStatus(True, N, H, minimal)


def _acts_freely(G, H, N):
    for h in H.elements():
        if h == 0:
            continue
        for x in N.elements():
            if x == 0:
                continue
            if G.conjugate(x, h) == x:
                return False
    return True


def _is_frobenius_subtable(G, members, cache):
    got = cache.get(members)
    if got is None:
        sub = subgroup_table(G, members)
        got = frobenius_status(sub, check_minimal=False).is_frobenius
        cache[members] = got
    return got


# ---------------------------------------------------------------------------
# family matching


def _is_cyclic(G: GroupTable) -> bool:
    return G.order == 1 or max(G.element_orders()) == G.order


@lru_cache(maxsize=None)
def _reference_q8xcp(p: int) -> GroupTable:
    return direct_product(generalized_quaternion(8), cyclic(p))


def _bipartite_family_match(G: GroupTable) -> FamilyTag | None:
    """One of: cyclic p^m; cyclic p^m q^n; split metacyclic with ord(λ) = q."""
    primes = factor_multiset(G.order) if G.order > 1 else ()
    distinct = sorted(set(primes))
    if _is_cyclic(G):
        if len(distinct) <= 1:
            return FamilyTag("cyclic-prime-power", tuple(primes))
        if len(distinct) == 2:
            return FamilyTag("cyclic-two-prime", tuple(primes))
        return None
    if len(distinct) != 2:
        return None
    e0 = primes.count(distinct[0])
    e1 = primes.count(distinct[1])
    for p, m, q, nn in ((distinct[0], e0, distinct[1], e1),
                        (distinct[1], e1, distinct[0], e0)):
        lam = element_of_order(q, p ** m)
        if lam is None:
            continue
        pres = catalog_presentation("Metacyclic", p, m, q, nn, lam)
        ok, _ = satisfies_presentation(G, pres)
        if ok:
            return FamilyTag("metacyclic", (p, m, q, nn, lam))
    return None


def _match_k14_presentation(G: GroupTable, max_n: int) -> int | None:
    primes = factor_multiset(G.order)
    twos = primes.count(2)
    if sorted(set(primes)) != [2, 3] or primes.count(3) != 1 or twos > max_n:
        return None
    pres = catalog_presentation("K14Family", twos)
    ok, _ = satisfies_presentation(G, pres)
    return twos if ok else None


def _k14_family_match(G: GroupTable) -> FamilyTag | None:
    primes = factor_multiset(G.order) if G.order > 1 else ()
    distinct = sorted(set(primes))
    inv = abelian_invariants(G)
    if _is_cyclic(G):
        if len(distinct) == 3 and len(primes) == 3:
            return FamilyTag("cyclic-three-prime", tuple(primes))
        if len(distinct) == 2:
            m, nn = primes.count(distinct[0]), primes.count(distinct[1])
            if 1 <= m <= 3 and 1 <= nn <= 3:
                return FamilyTag("cyclic-two-prime-exp3", tuple(primes))
        return None
    if inv is not None:
        si = tuple(sorted(inv))
        if len(si) == 2 and si[0] == si[1] and is_prime(si[0]):
            return FamilyTag("p-by-p", (si[0],))
        if si == (2, 4):
            return FamilyTag("c4xc2")
        if si == (4, 4):
            return FamilyTag("c4xc4")
        if len(si) == 3 and si[0] == 2 and si[1] == 2 and is_prime(si[2]) and si[2] > 2:
            return FamilyTag("cpx2x2", (si[2],))
        return None
    if G.order == 8:
        ok, _ = are_isomorphic(G, generalized_quaternion(8))
        if ok:
            return FamilyTag("q8")
        return None
    if G.order % 8 == 0:
        p = G.order // 8
        if p > 2 and is_prime(p):
            ok, _ = are_isomorphic(G, _reference_q8xcp(p))
            if ok:
                return FamilyTag("q8xcp", (p,))
    k = _match_k14_presentation(G, 3)
    if k is not None:
        return FamilyTag("dihedral-by-2power", (k,))
    return None


def _claw_family_match(G: GroupTable) -> FamilyTag | None:
    primes = factor_multiset(G.order) if G.order > 1 else ()
    distinct = sorted(set(primes))
    inv = abelian_invariants(G)
    if _is_cyclic(G):
        if len(distinct) == 3 and len(primes) == 3:
            return FamilyTag("cyclic-three-prime", tuple(primes))
        if len(distinct) == 2:
            m, nn = primes.count(distinct[0]), primes.count(distinct[1])
            if 1 <= m <= 2 and 1 <= nn <= 2:
                return FamilyTag("cyclic-two-prime-exp2", tuple(primes))
        return None
    if inv is not None:
        si = tuple(sorted(inv))
        if len(si) == 2 and si[0] == si[1] and is_prime(si[0]):
            return FamilyTag("p-by-p", (si[0],))
        if len(si) == 3 and si[0] == 2 and si[1] == 2 and is_prime(si[2]) and si[2] > 2:
            return FamilyTag("cpx2x2", (si[2],))
        return None
    if G.order == 8:
        ok, _ = are_isomorphic(G, generalized_quaternion(8))
        if ok:
            return FamilyTag("q8")
    return None


def _subgroup_is_cyclic(G: GroupTable, members: int) -> bool:
    order = members.bit_count()
    orders = G.element_orders()
    return order == 1 or any(orders[x] == order for x in iter_bits(members))


def _pairs_generate_maximals(G, lattice, phi_members):
    """For a p-group with d(G) = 3: is <x, y> maximal whenever x, y extend
    to a minimal generating triple (their images span a 2-dim subspace of
    the Frattini quotient)?"""
    Q, proj = quotient_group(G, phi_members)
    p = factor_multiset(G.order)[0]
    target = Q.order // p
    closure_cache: dict[tuple[int, int], bool] = {}
    for x in range(1, G.order):
        for y in range(x + 1, G.order):
            key = (proj[x], proj[y]) if proj[x] <= proj[y] else (proj[y], proj[x])
            spans = closure_cache.get(key)
            if spans is None:
                qmask, _ = closure_mask(Q.mul, [key[0], key[1]])
                spans = qmask.bit_count() == target
                closure_cache[key] = spans
            if not spans:
                continue
            kmask, _ = closure_mask(G.mul, [x, y])
            if lattice.by_mask[kmask] not in lattice.maximal_set:
                return False
    return True


def _perfect_branch(G, lattice) -> FamilyTag | None:
    normal_maximals = [i for i in lattice.maximal_ids if lattice.normal[i]]
    if len(normal_maximals) != 1:
        return None
    hid = normal_maximals[0]
    H = lattice.subgroup(hid)
    from .groups import commutator_mask
    if commutator_mask(G, H.members, H.members) != H.members:
        return None
    phi = lattice.frattini()
    Q, proj = quotient_group(G, phi.members)
    hbar = 0
    for x in H.elements():
        hbar |= 1 << proj[x]
    sub = subgroup_table(Q, hbar)
    if sub.order == 1:
        return None
    if any(normal_closure_mask(sub, x) != sub.full_mask
           for x in range(1, sub.order)):
        return None
    return FamilyTag("perfect-normal-maximal", (H.order,))


SQUAREFREE_TAGS = ("cpqr", "cpkq", "q8xcp", "cppq",
                   "frattini-by-minimal-frobenius",
                   "pgroup-d3-maximal-pairs", "pgroup-d2-cyclic-frattini")


def _ppq_split(sorted_invariants):
    """(p, q) if the three invariants are {p, p, q} for distinct primes."""
    si = sorted_invariants
    if len(si) != 3 or not all(is_prime(x) for x in si):
        return None
    if si[0] == si[1] != si[2]:
        return si[0], si[2]
    if si[0] != si[1] == si[2]:
        return si[1], si[0]
    return None


def _squarefree_matches(G, lattice, structure: StructureSummary) -> list[FamilyTag]:
    tags: list[FamilyTag] = []
    primes = factor_multiset(G.order) if G.order > 1 else ()
    distinct = sorted(set(primes))
    inv = abelian_invariants(G)
    if _is_cyclic(G):
        if len(distinct) == 3 and len(primes) == 3:
            tags.append(FamilyTag("cpqr", tuple(primes)))
        if len(distinct) == 2 and min(primes.count(p) for p in distinct) == 1:
            tags.append(FamilyTag("cpkq", tuple(primes)))
    if G.order % 8 == 0 and is_prime(G.order // 8) and G.order // 8 > 2:
        ok, _ = are_isomorphic(G, _reference_q8xcp(G.order // 8))
        if ok:
            tags.append(FamilyTag("q8xcp", (G.order // 8,)))
    if inv is not None and len(inv) == 3:
        si = sorted(inv)
        pq = _ppq_split(si)
        if pq is not None:
            tags.append(FamilyTag("cppq", pq))
    phi = lattice.frattini()
    if phi.members == 1:
        fs = frobenius_status(G, lattice)
    else:
        Q, _ = quotient_group(G, phi.members)
        fs = frobenius_status(Q)
    if fs.is_frobenius and fs.is_minimal:
        tags.append(FamilyTag("frattini-by-minimal-frobenius"))
    if len(distinct) == 1:
        d = structure.min_generators
        if d == 3 and _pairs_generate_maximals(G, lattice, phi.members):
            tags.append(FamilyTag("pgroup-d3-maximal-pairs", (distinct[0],)))
        if d == 2 and not _is_cyclic(G) and _subgroup_is_cyclic(G, phi.members):
            tags.append(FamilyTag("pgroup-d2-cyclic-frattini", (distinct[0],)))
    pb = _perfect_branch(G, lattice)
    if pb is not None:
        tags.append(pb)
    return tags


# ---------------------------------------------------------------------------
# theorem checkers


def least_prime_maximal_family(G: GroupTable, lattice: SubgroupLattice):
    """Maximal subgroups whose indexes are the smallest prime factors of
    |G/Phi(G)| (with multiplicity) and whose intersection is Phi(G), or None.

    Only as many maximals as there are prime factors can work (each added
    maximal divides the intersection order by exactly its index), so the
    search is a pruned depth-first scan at that fixed length.
    """
    phi = lattice.frattini()
    if phi.order == G.order:
        return []  # trivial Frattini quotient: empty intersection convention
    primes = factor_multiset(G.order // phi.order)
    by_index: dict[int, list[tuple[int, int]]] = {}
    for i in lattice.maximal_ids:
        s = lattice.subgroup(i)
        by_index.setdefault(G.order // s.order, []).append((i, s.members))

    def dfs(level, prev_id, mask):
        if level == len(primes):
            return [] if mask == phi.members else None
        p = primes[level]
        for mid, mmask in by_index.get(p, ()):
            if level > 0 and primes[level - 1] == p and mid <= prev_id:
                continue
            nm = mask & mmask
            if nm.bit_count() * p == mask.bit_count():
                rest = dfs(level + 1, mid, nm)
                if rest is not None:
                    return [mid] + rest
        return None

    return dfs(0, -1, G.full_mask)


def check_connectivity_theorem(G: GroupTable, lattice: SubgroupLattice,
                               F: FactorizationGraph) -> TheoremVerdict:
    """No isolated vertices <=> connected <=> Frattini is an intersection of
    maximals with least-prime indexes; and isolated-free implies solvable."""
    t0 = perf_counter()
    comp = components(F.simple())
    no_isolated = not comp.isolated
    connected = comp.is_connected
    family = least_prime_maximal_family(G, lattice)
    cond3 = family is not None
    solvable_needed = is_solvable(G) if no_isolated else True
    ok = (no_isolated == connected == cond3) and solvable_needed
    witness = {
        "no_isolated": no_isolated,
        "connected": connected,
        "least_prime_family": ([lattice.subgroup(i).label() for i in family]
                               if family else None),
        "family_indexes": ([G.order // lattice.subgroup(i).order for i in family]
                           if family else None),
    }
    if comp.isolated:
        witness["isolated"] = [F.subgroup(v).label() for v in comp.isolated[:5]]
    if not solvable_needed:
        witness["solvability_violated"] = True
    return TheoremVerdict("connectivity-equivalence", G.name,
                          "holds" if ok else "fails", witness,
                          perf_counter() - t0)


def check_bipartite_theorem(G: GroupTable, lattice: SubgroupLattice,
                            F: FactorizationGraph) -> TheoremVerdict:
    """(Bipartite and isolated-free) <=> cyclic prime power, cyclic with two
    primes, or the split metacyclic family; positives are complete bipartite."""
    t0 = perf_counter()
    sg = F.simple()
    comp = components(sg)
    bip = bipartite_structure(sg)
    lhs = bip.is_bipartite and not comp.isolated
    tag = _bipartite_family_match(G)
    ok = lhs == (tag is not None)
    witness = {"bipartite_no_isolated": lhs,
               "family": tag.describe() if tag else None}
    if ok and lhs:
        if sg.n == 0:
            # empty graph: the complete-bipartite corollary is vacuous here;
            # flagged rather than asserted
            witness["complete_bipartite"] = "vacuous-empty-graph"
        else:
            ok = bip.is_complete_bipartite
            witness["complete_bipartite"] = bip.is_complete_bipartite
            witness["parts"] = [
                [F.subgroup(v).label() for v in bip.parts[0]],
                [F.subgroup(v).label() for v in bip.parts[1]],
            ]
    if not bip.is_bipartite and bip.odd_cycle:
        witness["odd_cycle"] = [F.subgroup(v).label() for v in bip.odd_cycle]
    return TheoremVerdict("bipartite-classification", G.name,
                          "holds" if ok else "fails", witness,
                          perf_counter() - t0)


def check_k14_theorem(G: GroupTable, lattice: SubgroupLattice,
                      F: FactorizationGraph,
                      structure: StructureSummary | None = None) -> TheoremVerdict:
    """K_{1,4}-freeness <=> membership in the listed families (factorizable
    groups only; others are skipped)."""
    t0 = perf_counter()
    fz, _ = is_factorizable(G, lattice)
    if not fz:
        return TheoremVerdict("k14-free-classification", G.name, "skipped",
                              {"reason": "non-factorizable"}, perf_counter() - t0)
    occ = find_induced(F.simple(), "K14")
    tag = _k14_family_match(G)
    ok = (occ is None) == (tag is not None)
    if structure is None:
        nilpotent = lattice_free_nilpotent(G)
    else:
        nilpotent = structure.is_nilpotent
    witness = {
        "k14": [F.subgroup(v).label() for v in occ] if occ else None,
        "family": tag.describe() if tag else None,
        "case": "nilpotent" if nilpotent else "non-nilpotent",
    }
    return TheoremVerdict("k14-free-classification", G.name,
                          "holds" if ok else "fails", witness,
                          perf_counter() - t0)


def lattice_free_nilpotent(G: GroupTable) -> bool:
    from .groups import lower_central_series
    return lower_central_series(G)[-1] == 1


def check_claw_corollary(G: GroupTable, lattice: SubgroupLattice,
                         F: FactorizationGraph,
                         structure: StructureSummary | None = None) -> TheoremVerdict:
    """Claw-freeness <=> membership in the listed families (factorizable only)."""
    t0 = perf_counter()
    fz, _ = is_factorizable(G, lattice)
    if not fz:
        return TheoremVerdict("claw-free-classification", G.name, "skipped",
                              {"reason": "non-factorizable"}, perf_counter() - t0)
    occ = find_induced(F.simple(), "claw")
    tag = _claw_family_match(G)
    ok = (occ is None) == (tag is not None)
    witness = {
        "claw": [F.subgroup(v).label() for v in occ] if occ else None,
        "family": tag.describe() if tag else None,
    }
    return TheoremVerdict("claw-free-classification", G.name,
                          "holds" if ok else "fails", witness,
                          perf_counter() - t0)


def check_square_lemma(G: GroupTable, lattice: SubgroupLattice,
                       decomposition) -> TheoremVerdict:
    """A product of n >= 4 mutually permuting subgroups, no proper
    sub-collection generating, forces the explicit induced square
    {H1H2K, H3H4K, H1H2H3K, H1H3H4K} with K = H5...Hn."""
    t0 = perf_counter()
    ids = list(decomposition)

    def skip(reason):
        return TheoremVerdict("permuting-product-square", G.name, "skipped",
                              {"reason": reason}, perf_counter() - t0)

    if len(ids) < 4:
        return skip(f"needs at least four factors, got {len(ids)}")
    subs = [lattice.subgroup(i) for i in ids]
    for a in range(len(subs)):
        for b in range(a + 1, len(subs)):
            if not product_profile(subs[a], subs[b]).permutes:
                return skip(f"factors {a} and {b} do not permute")
    total = subs[0].members
    for s in subs[1:]:
        total = product_set_mask(G, total, s.members)
    if total != G.full_mask:
        return skip("iterated product is not the whole group")
    for drop in range(len(subs)):
        union = 0
        for j, s in enumerate(subs):
            if j != drop:
                union |= s.members
        mask, _ = closure_mask(G.mul, list(iter_bits(union)))
        if mask == G.full_mask:
            return skip(f"the collection without factor {drop} still generates")

    K = 1
    for s in subs[4:]:
        K = product_set_mask(G, K, s.members)

    def prod(*masks):
        out = K
        for m in masks:
            out = product_set_mask(G, out, m)
        return out

    quad = [prod(subs[0].members, subs[1].members),
            prod(subs[2].members, subs[3].members),
            prod(subs[0].members, subs[1].members, subs[2].members),
            prod(subs[0].members, subs[2].members, subs[3].members)]
    F = build_graph(G, lattice)
    positions = []
    for m in quad:
        sid = lattice.by_mask.get(m)
        if sid is None or sid not in F.position_of:
            return TheoremVerdict("permuting-product-square", G.name, "fails",
                                  {"reason": "explicit product is not a vertex"},
                                  perf_counter() - t0)
        positions.append(F.position_of[sid])
    edges = sum(F.adjacent(a, b)
                for a, b in combinations(positions, 2))
    degs = sorted(sum(F.adjacent(a, b) for b in positions if b != a)
                  for a in positions)
    explicit_square = (len(set(positions)) == 4 and edges == 4
                       and degs == [2, 2, 2, 2])
    searched = find_induced(F.simple(), "C4")
    ok = explicit_square and searched is not None
    witness = {
        "explicit_set": [lattice.subgroup(lattice.by_mask[m]).label() for m in quad],
        "explicit_is_square": explicit_square,
        "search_found": ([F.subgroup(v).label() for v in searched]
                         if searched else None),
    }
    return TheoremVerdict("permuting-product-square", G.name,
                          "holds" if ok else "fails", witness,
                          perf_counter() - t0)


def check_squarefree_theorem(G: GroupTable, lattice: SubgroupLattice,
                             F: FactorizationGraph,
                             structure: StructureSummary | None = None,
                             family_hints=()) -> TheoremVerdict:
    """Square-free graphs must match one of the seven listed families or the
    perfect-normal-maximal branch; groups constructed as family instances
    (passed as hints) must conversely be square-free."""
    t0 = perf_counter()
    fz, _ = is_factorizable(G, lattice)
    if not fz:
        return TheoremVerdict("square-free-classification", G.name, "skipped",
                              {"reason": "non-factorizable"}, perf_counter() - t0)
    if structure is None:
        structure = structure_probe(G)
    occ = find_induced(F.simple(), "C4")
    if occ is None:
        tags = _squarefree_matches(G, lattice, structure)
        ok = bool(tags)
        witness = {"square": None,
                   "matched": [t.describe() for t in tags],
                   "solvable": structure.is_solvable}
        if any(t.name == "perfect-normal-maximal" for t in tags):
            witness["note"] = "perfect branch detected; side conditions unverified"
    else:
        violated = list(family_hints)
        ok = not violated
        witness = {"square": [F.subgroup(v).label() for v in occ],
                   "violated_family_promises": violated}
    return TheoremVerdict("square-free-classification", G.name,
                          "holds" if ok else "fails", witness,
                          perf_counter() - t0)


def gap_parity_agreement(G: GroupTable, lattice: SubgroupLattice) -> bool:
    """Native K_{1,4} detection on the Frattini-filtered graph agrees with
    the degree-multiset scan over all proper subgroups."""
    F = build_graph(G, lattice, "full")
    P = build_graph(G, lattice, "gap_parity")
    native_free = find_induced(F.simple(), "K14") is None
    parity_free = k14_degree_multiset_scan(P.simple()) is None
    return native_free == parity_free


# ---------------------------------------------------------------------------
# corpus generation and the report


@dataclass(frozen=True)
class CorpusConfig:
    max_order: int = 64
    two_power_max: int = 64
    suites: tuple[str, ...] = ("all",)
    jobs: int = 1
    ingest_tables: tuple = ()      # (name, rows) pairs from ingested files
    max_subgroups: int = 20_000

    def suite_list(self) -> tuple[str, ...]:
        if "all" in self.suites:
            return SUITES
        return tuple(s for s in SUITES if s in self.suites)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    order: int
    recipe: tuple
    hints: tuple[str, ...] = ()


def realize_recipe(recipe) -> GroupTable:
    kind = recipe[0]
    if kind == "catalog":
        return catalog_group(recipe[1], *recipe[2])
    if kind == "product":
        return direct_product(realize_recipe(recipe[1]), realize_recipe(recipe[2]))
    if kind == "table":
        return GroupTable([list(r) for r in recipe[2]], name=recipe[1],
                          origin="ingest")
    raise ValidationError(f"unknown recipe kind {recipe[0]!r}")


def _partitions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def _abelian_types(n: int):
    """All abelian groups of order n as descending elementary-divisor tuples."""
    primes = factor_multiset(n)
    per_prime = []
    for p in sorted(set(primes)):
        e = primes.count(p)
        per_prime.append([tuple(p ** part for part in parts)
                          for parts in _partitions(e)])
    out = []

    def rec(i, acc):
        if i == len(per_prime):
            out.append(tuple(sorted(acc, reverse=True)))
            return
        for choice in per_prime[i]:
            rec(i + 1, acc + list(choice))

    rec(0, [])
    return out


_PRODUCT_ATOMS = (
    ("C2", ("catalog", "Cyclic", (2,))),
    ("C3", ("catalog", "Cyclic", (3,))),
    ("C4", ("catalog", "Cyclic", (4,))),
    ("C5", ("catalog", "Cyclic", (5,))),
    ("C7", ("catalog", "Cyclic", (7,))),
    ("E(2,2)", ("catalog", "ElementaryAbelian", (2, 2))),
    ("S3", ("catalog", "Sym", (3,))),
    ("D8", ("catalog", "Dihedral", (8,))),
    ("Q8", ("catalog", "GeneralizedQuaternion", (8,))),
    ("D10", ("catalog", "Dihedral", (10,))),
    ("A4", ("catalog", "Alt", (4,))),
    ("C9", ("catalog", "Cyclic", (9,))),
)

_ATOM_ORDERS = {"C2": 2, "C3": 3, "C4": 4, "C5": 5, "C7": 7, "E(2,2)": 4,
                "S3": 6, "D8": 8, "Q8": 8, "D10": 10, "A4": 12, "C9": 9}


def corpus_recipes(config: CorpusConfig):
    """Deterministic list of (name, order, recipe, hints) before dedup."""
    cap = config.max_order

    def within(n):
        if n < 2 or n > cap:
            return False
        if n & (n - 1) == 0 and n > config.two_power_max:
            return False
        return True

    items: list[CorpusEntry] = []

    def add(name, order, recipe, hints=()):
        items.append(CorpusEntry(name, order, recipe, tuple(hints)))

    for n in range(2, cap + 1):
        if not within(n):
            continue
        primes = factor_multiset(n)
        distinct = sorted(set(primes))
        hints = []
        if len(distinct) == 3 and len(primes) == 3:
            hints.append("cpqr")
        if len(distinct) == 2 and min(primes.count(p) for p in distinct) == 1:
            hints.append("cpkq")
        add(f"C{n}", n, ("catalog", "Cyclic", (n,)), hints)

    for n in range(4, cap + 1):
        if not within(n):
            continue
        for typ in _abelian_types(n):
            if len(typ) == 1:
                continue  # cyclic, already added
            name = "x".join(f"C{d}" for d in typ)
            hints = []
            si = sorted(typ)
            if _ppq_split(si) is not None:
                hints.append("cppq")
            if len(si) == 3 and si[0] == si[1] == si[2] and is_prime(si[0]):
                hints.append("pgroup-d3-maximal-pairs")
            if (len(si) == 2 and is_prime(si[0])
                    and factor_multiset(si[1])[0] == si[0]):
                hints.append("pgroup-d2-cyclic-frattini")
            add(name, n, ("catalog", "AbelianOfType", tuple(typ)), hints)

    for order in range(6, cap + 1, 2):
        if not within(order):
            continue
        hints = ["pgroup-d2-cyclic-frattini"] if order & (order - 1) == 0 and order >= 8 else []
        add(f"D{order}", order, ("catalog", "Dihedral", (order,)), hints)

    for order in (8, 16, 32, 64):
        if within(order):
            add(f"Q{order}", order, ("catalog", "GeneralizedQuaternion", (order,)),
                ["pgroup-d2-cyclic-frattini"])
    for order in (16, 32, 64):
        if within(order):
            add(f"SD{order}", order, ("catalog", "SemiDihedral", (order,)),
                ["pgroup-d2-cyclic-frattini"])
            add(f"M{order}", order, ("catalog", "Modular", (order,)),
                ["pgroup-d2-cyclic-frattini"])

    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        for q in (2, 3, 5, 7):
            if q == p or (p - 1) % q:
                continue
            m = 1
            while p ** m * q <= cap:
                nn = 1
                while p ** m * q ** nn <= cap:
                    lam = element_of_order(q, p ** m)
                    if lam is not None:
                        add(f"Meta({p},{m},{q},{nn},{lam})", p ** m * q ** nn,
                            ("catalog", "Metacyclic", (p, m, q, nn, lam)))
                    nn += 1
                m += 1

    n = 1
    while 3 * 2 ** n <= cap:
        add(f"K14({n})", 3 * 2 ** n, ("catalog", "K14Family", (n,)))
        n += 1

    if within(16):
        for i in (1, 2, 3, 4):
            add(f"G{i}", 16, ("catalog", f"G{i}", ()))

    for deg in (3, 4, 5):
        order = 1
        for k in range(2, deg + 1):
            order *= k
        if within(order):
            add(f"S{deg}", order, ("catalog", "Sym", (deg,)))
        if within(order // 2) and deg >= 4:
            add(f"A{deg}", order // 2, ("catalog", "Alt", (deg,)))

    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        for q in range(2, p):
            if (p - 1) % q or p * q > cap:
                continue
            hints = ["frattini-by-minimal-frobenius"] if is_prime(q) else []
            add(f"Frob({p},{q})", p * q, ("catalog", "Frobenius", (p, q)), hints)
    for (p, q, r) in ((2, 3, 2), (3, 2, 2), (5, 2, 2), (3, 4, 2), (2, 7, 3)):
        order = p ** r * q
        if within(order):
            hints = []
            if (p, q, r) in ((2, 3, 2), (2, 7, 3)):
                hints.append("frattini-by-minimal-frobenius")
            add(f"Frob({p},{q},{r})", order, ("catalog", "Frobenius", (p, q, r)),
                hints)

    atoms = dict(_PRODUCT_ATOMS)
    names = [a for a, _ in _PRODUCT_ATOMS]
    for i, a in enumerate(names):
        for b in names[i:]:
            order = _ATOM_ORDERS[a] * _ATOM_ORDERS[b]
            if not within(order):
                continue
            hints = []
            pair = {a, b}
            if "Q8" in pair:
                other = (pair - {"Q8"}).pop() if len(pair) == 2 else "Q8"
                if other in ("C3", "C5", "C7"):
                    hints.append("q8xcp")
            add(f"{a}x{b}", order, ("product", atoms[a], atoms[b]), hints)

    for name, rows in config.ingest_tables:
        order = len(rows)
        if within(order):
            add(name, order, ("table", name, tuple(tuple(r) for r in rows)))

    items.sort(key=lambda e: (e.order, e.name))
    return items


def build_corpus(config: CorpusConfig) -> list[CorpusEntry]:
    """Generate, realize, and isomorphism-deduplicate the corpus.

    The first entry (in (order, name) order) of each isomorphism class is
    kept; family hints of merged duplicates are unioned onto the keeper
    since they are facts about the isomorphism class.
    """
    raw = corpus_recipes(config)
    kept: list[tuple[CorpusEntry, GroupTable]] = []
    merged_hints: dict[str, set] = {}
    by_order: dict[int, list[int]] = {}
    for entry in raw:
        try:
            table = realize_recipe(entry.recipe)
        except (ValidationError, CapExceeded):
            continue
        duplicate = None
        for idx in by_order.get(table.order, ()):
            ok, _ = are_isomorphic(kept[idx][1], table)
            if ok:
                duplicate = idx
                break
        if duplicate is None:
            by_order.setdefault(table.order, []).append(len(kept))
            merged_hints[entry.name] = set(entry.hints)
            kept.append((entry, table))
        else:
            merged_hints[kept[duplicate][0].name].update(entry.hints)
    out = []
    for entry, _ in kept:
        out.append(CorpusEntry(entry.name, entry.order, entry.recipe,
                               tuple(sorted(merged_hints[entry.name]))))
    return out


@dataclass
class TheoremReport:
    config: dict
    corpus: list
    verdicts: list[TheoremVerdict]
    tallies: dict
    version: str = __version__
    caps: dict = field(default_factory=dict)

    @property
    def has_failures(self) -> bool:
        return any(v.status == "fails" for v in self.verdicts)

    def to_json_dict(self) -> dict:
        return {
            "config": self.config,
            "corpus": self.corpus,
            "verdicts": [
                {"theorem": v.theorem, "group": v.group, "status": v.status,
                 "witness": v.witness, "seconds": round(v.seconds, 6)}
                for v in self.verdicts
            ],
            "tallies": self.tallies,
            "version": self.version,
            "caps": self.caps,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"corpus: {len(self.corpus)} groups "
                 f"(orders {min((g['order'] for g in self.corpus), default=0)}"
                 f"..{max((g['order'] for g in self.corpus), default=0)}); "
                 f"scope: generated corpus, not all abstract groups"]
        lines.append(f"{'theorem':34} {'holds':>6} {'fails':>6} {'skipped':>8}")
        for theorem, t in self.tallies.items():
            lines.append(f"{theorem:34} {t['holds']:>6} {t['fails']:>6} "
                         f"{t['skipped']:>8}")
        for v in self.verdicts:
            if v.status == "fails":
                lines.append(f"FAIL {v.theorem} on {v.group}: {v.witness}")
        return "\n".join(lines) + "\n"


def analyze_one(entry: CorpusEntry, config: CorpusConfig) -> list[TheoremVerdict]:
    """Run the configured suites on one corpus entry."""
    suites = config.suite_list()
    G = realize_recipe(entry.recipe)
    try:
        lattice = enumerate_subgroups(G, max_subgroups=config.max_subgroups)
    except CapExceeded as exc:
        return [TheoremVerdict(_suite_theorem(s), entry.name, "skipped",
                               {"reason": f"cap exceeded: {exc}"}, 0.0)
                for s in suites]
    F = build_graph(G, lattice)
    structure = structure_probe(G)
    out = []
    for s in suites:
        if s == "connectivity":
            out.append(check_connectivity_theorem(G, lattice, F))
        elif s == "bipartite":
            out.append(check_bipartite_theorem(G, lattice, F))
        elif s == "k14":
            out.append(check_k14_theorem(G, lattice, F, structure))
        elif s == "claw":
            out.append(check_claw_corollary(G, lattice, F, structure))
        elif s == "square":
            out.append(check_squarefree_theorem(G, lattice, F, structure,
                                                entry.hints))
    return out


def _suite_theorem(suite: str) -> str:
    return {
        "connectivity": "connectivity-equivalence",
        "bipartite": "bipartite-classification",
        "k14": "k14-free-classification",
        "claw": "claw-free-classification",
        "square": "square-free-classification",
    }[suite]


def _worker(args):
    entry, config = args
    return analyze_one(entry, config)


def run_corpus(config: CorpusConfig) -> TheoremReport:
    """Generate the corpus, run every configured checker on every group,
    and aggregate the verdicts into a report.  Per-group cap errors become
    skipped verdicts; they never abort the run."""
    entries = build_corpus(config)
    if config.jobs > 1 and entries:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            verdict_lists = list(pool.map(_worker,
                                          [(e, config) for e in entries]))
    else:
        verdict_lists = [analyze_one(e, config) for e in entries]
    verdicts = [v for vl in verdict_lists for v in vl]
    tallies: dict[str, dict[str, int]] = {}
    for s in config.suite_list():
        theorem = _suite_theorem(s)
        tallies[theorem] = {"holds": 0, "fails": 0, "skipped": 0}
    for v in verdicts:
        tallies.setdefault(v.theorem,
                           {"holds": 0, "fails": 0, "skipped": 0})[v.status] += 1
    return TheoremReport(
        config={"max_order": config.max_order,
                "two_power_max": config.two_power_max,
                "suites": list(config.suite_list()),
                "jobs": config.jobs},
        corpus=[{"name": e.name, "order": e.order, "hints": list(e.hints)}
                for e in entries],
        verdicts=verdicts,
        tallies=tallies,
        caps={"max_subgroups": config.max_subgroups,
              "lattice_two_power_cap": 64, "lattice_order_cap": 200},
    )
