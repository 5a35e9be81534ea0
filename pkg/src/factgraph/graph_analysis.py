"""Group-agnostic graph predicates on bit-row adjacency.

Covers connectivity, bipartite structure, induced-pattern search for the
small forbidden patterns (claw, K_{1,4}, triangle, square, and explicit
patterns up to 6 vertices), and matching against complements of disjoint
unions of cliques.

Conventions for the empty graph: connected, bipartite, no isolated
vertices.  These make the classification scans treat groups whose graph is
empty (cyclic prime-power groups) consistently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .bitset import iter_bits
from .errors import ValidationError


class SimpleGraph:
    """Undirected simple graph: vertex count plus symmetric bit-rows."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj):
        adj = tuple(adj)
        if len(adj) != n:
            raise ValidationError("adjacency row count does not match n")
        for i, row in enumerate(adj):
            if row >> n:
                raise ValidationError(f"adjacency row {i} has out-of-range bits")
            if row >> i & 1:
                raise ValidationError(f"vertex {i} has a self-loop")
        for i in range(n):
            for j in iter_bits(adj[i]):
                if not adj[j] >> i & 1:
                    raise ValidationError(f"adjacency is not symmetric at ({i}, {j})")
        self.n = n
        self.adj = adj

    @classmethod
    def from_edges(cls, n: int, edges) -> "SimpleGraph":
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise ValidationError("self-loops are not allowed")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, rows)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edges(self):
        for i in range(self.n):
            for off in iter_bits(self.adj[i] >> (i + 1)):
                yield i, i + 1 + off

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def __repr__(self):
        return f"<SimpleGraph n={self.n} edges={self.edge_count}>"


@dataclass(frozen=True)
class ComponentSummary:
    components: tuple[tuple[int, ...], ...]  # components with >= 2 vertices
    isolated: tuple[int, ...]                # degree-0 vertices
    is_connected: bool


def components(g: SimpleGraph) -> ComponentSummary:
    """BFS components.  Isolated vertices are reported separately and the
    empty graph counts as connected."""
    seen = 0
    comps = []
    isolated = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        if not g.adj[start]:
            isolated.append(start)
            seen |= 1 << start
            continue
        comp_mask = 1 << start
        queue = [start]
        while queue:
            x = queue.pop()
            for y in iter_bits(g.adj[x] & ~comp_mask):
                comp_mask |= 1 << y
                queue.append(y)
        seen |= comp_mask
        comps.append(tuple(iter_bits(comp_mask)))
    unit_count = len(comps) + len(isolated)
    return ComponentSummary(tuple(comps), tuple(isolated), unit_count <= 1)


@dataclass(frozen=True)
class BipartiteSummary:
    is_bipartite: bool
    parts: tuple[tuple[int, ...], tuple[int, ...]]
    is_complete_bipartite: bool
    odd_cycle: tuple[int, ...] | None


def bipartite_structure(g: SimpleGraph) -> BipartiteSummary:
    """Two-color by BFS; on failure return an odd-cycle witness.

    Parts are canonicalized per component (the side holding the component's
    smallest vertex goes first), so the global first part contains vertex 0
    when it exists.  Complete-bipartite additionally demands every cross
    pair be an edge and both parts be nonempty.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = [start]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for y in iter_bits(g.adj[x]):
                if color[y] < 0:
                    color[y] = color[x] ^ 1
                    parent[y] = x
                    queue.append(y)
                elif color[y] == color[x]:
                    return BipartiteSummary(False, ((), ()), False,
                                            _odd_cycle(parent, x, y))
    part0 = tuple(i for i in range(g.n) if color[i] == 0)
    part1 = tuple(i for i in range(g.n) if color[i] == 1)
    complete = bool(part0) and bool(part1)
    if complete:
        m1 = 0
        for i in part1:
            m1 |= 1 << i
        complete = all(g.adj[i] == m1 for i in part0)
    return BipartiteSummary(True, (part0, part1), complete, None)


def _odd_cycle(parent, x, y):
    px = [x]
    while parent[px[-1]] >= 0:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] >= 0:
        py.append(parent[py[-1]])
    sx, sy = set(px), set(py)
    common = next(v for v in px if v in sy)
    cx = px[:px.index(common) + 1]
    cy = py[:py.index(common)]
    return tuple(cx + list(reversed(cy)))


# ---------------------------------------------------------------------------
# induced patterns

_STARS = {"claw": 3, "K13": 3, "K14": 4}
_MAX_PATTERN = 6


def find_induced(g: SimpleGraph, pattern):
    """First induced occurrence of a pattern, or None.

    ``pattern`` is one of the names 'claw'/'K13', 'K14', 'C3'/'triangle',
    'C4'/'square', or an explicit SimpleGraph on at most 6 vertices.  Stars
    are found by scanning centers in ascending order for an independent set
    in the neighborhood; squares by scanning the smallest vertex of the
    occurrence.  Every returned occurrence is re-verified against the
    pattern before being returned.
    """
    if isinstance(pattern, str):
        if pattern in _STARS:
            occ = _find_star(g, _STARS[pattern])
        elif pattern in ("C3", "triangle"):
            occ = _find_triangle(g)
        elif pattern in ("C4", "square"):
            occ = _find_square(g)
        else:
            raise ValidationError(f"unknown pattern name {pattern!r}")
        if occ is not None:
            _verify_occurrence(g, occ, _named_pattern(pattern))
        return occ
    if pattern.n > _MAX_PATTERN:
        raise ValidationError(f"pattern too large ({pattern.n} > {_MAX_PATTERN})")
    occ = _find_generic(g, pattern)
    if occ is not None:
        _verify_occurrence(g, occ, pattern)
    return occ


def star_graph(pendants: int) -> SimpleGraph:
    return SimpleGraph.from_edges(pendants + 1,
                                  [(0, i) for i in range(1, pendants + 1)])


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _named_pattern(name: str) -> SimpleGraph:
    if name in _STARS:
        return star_graph(_STARS[name])
    return cycle_graph(3 if name in ("C3", "triangle") else 4)


def _find_star(g: SimpleGraph, k: int):
    for center in range(g.n):
        nb = g.adj[center]
        if nb.bit_count() < k:
            continue
        picks = _independent_subset(g, nb, k)
        if picks is not None:
            return (center, *picks)
    return None


def _independent_subset(g: SimpleGraph, cand: int, k: int):
    if k == 0:
        return ()
    if cand.bit_count() < k:
        return None
    m = cand
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        rest = _independent_subset(g, m & ~g.adj[v], k - 1)
        if rest is not None:
            return (v, *rest)
    return None


def _find_triangle(g: SimpleGraph):
    for u in range(g.n):
        for off in iter_bits(g.adj[u] >> (u + 1)):
            v = u + 1 + off
            common = g.adj[u] & g.adj[v] & ~((1 << (v + 1)) - 1)
            if common:
                w = (common & -common).bit_length() - 1
                return (u, v, w)
    return None


def _find_square(g: SimpleGraph):
    """Induced 4-cycle u–v1–w–v2–u, scanning u as the smallest vertex."""
    for u in range(g.n):
        higher = ~((1 << (u + 1)) - 1)
        nonadj = higher & ~g.adj[u] & ((1 << g.n) - 1)
        for w in iter_bits(nonadj):
            common = g.adj[u] & g.adj[w] & higher
            m = common
            while m:
                low = m & -m
                v1 = low.bit_length() - 1
                m ^= low
                free = common & ~g.adj[v1] & ~low
                if free:
                    v2 = (free & -free).bit_length() - 1
                    return (u, v1, w, v2)
    return None


def _find_generic(g: SimpleGraph, pattern: SimpleGraph):
    k = pattern.n
    if k > g.n:
        return None
    pat_degs = sorted(pattern.degree(i) for i in range(k))
    for combo in combinations(range(g.n), k):
        degs = sorted(_induced_degree(g, combo, v) for v in combo)
        if degs != pat_degs:
            continue
        for perm in permutations(range(k)):
            ok = True
            for a in range(k):
                for b in range(a + 1, k):
                    if pattern.has_edge(a, b) != g.has_edge(combo[perm[a]],
                                                            combo[perm[b]]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return tuple(combo[perm[a]] for a in range(k))
    return None


def _induced_degree(g, combo, v):
    mask = 0
    for x in combo:
        mask |= 1 << x
    return (g.adj[v] & mask).bit_count()


def _verify_occurrence(g: SimpleGraph, occ, pattern: SimpleGraph):
    assert len(occ) == pattern.n
    for a in range(pattern.n):
        for b in range(a + 1, pattern.n):
            if g.has_edge(occ[a], occ[b]) != pattern.has_edge(a, b):
                raise AssertionError(
                    f"unsound pattern occurrence at positions ({a}, {b})")


def k14_degree_multiset_scan(g: SimpleGraph):
    """Find a 5-subset whose induced degree multiset is {4,1,1,1,1}.

    This is the subgroup-scan formulation of K_{1,4} detection over an
    unfiltered vertex set: enumerate a center and 4-subsets of its
    neighborhood, then test the degree multiset of the induced subgraph
    directly.  Used as the parity check against the native star search.
    """
    target = [1, 1, 1, 1, 4]
    for center in range(g.n):
        nb = list(iter_bits(g.adj[center]))
        if len(nb) < 4:
            continue
        for quad in combinations(nb, 4):
            verts = (center, *quad)
            mask = 0
            for v in verts:
                mask |= 1 << v
            degs = sorted((g.adj[v] & mask).bit_count() for v in verts)
            if degs == target:
                return verts
    return None


# ---------------------------------------------------------------------------
# complement-of-cliques matching


def equals_complement_of(g: SimpleGraph, terms):
    """Is g isomorphic to the complement of a disjoint union of cliques?

    ``terms`` is a sequence of (count, clique_size) pairs, e.g.
    ``[(2, 1), (1, 3)]`` for 2K1 ∪ K3.  The complement of such a union is
    complete multipartite with the clique sizes as parts, so the decision
    reduces to grouping vertices by identical adjacency rows; the returned
    witness maps each vertex of g to a vertex of the complement and is
    re-verified edge-by-edge before returning.
    """
    sizes = []
    for count, size in terms:
        if count < 0 or size < 1:
            raise ValidationError(f"bad complement term ({count}, {size})")
        sizes.extend([size] * count)
    if sum(sizes) != g.n:
        raise ValidationError(
            f"complement spec has {sum(sizes)} vertices, graph has {g.n}")
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(g.adj[v], []).append(v)
    class_list = sorted(classes.values(), key=lambda c: (len(c), c[0]))
    full = (1 << g.n) - 1
    for cls in class_list:
        cmask = 0
        for v in cls:
            cmask |= 1 << v
        if any(g.adj[v] != full & ~cmask for v in cls):
            return False, None
    if sorted(len(c) for c in class_list) != sorted(sizes):
        return False, None

    # build the target: parts laid out in the listed order
    offsets = []
    pos = 0
    for s in sizes:
        offsets.append((pos, s))
        pos += s
    remaining = sorted(range(len(sizes)), key=lambda i: sizes[i])
    used = set()
    mapping = [0] * g.n
    for cls in class_list:
        slot = next(i for i in remaining if sizes[i] == len(cls) and i not in used)
        used.add(slot)
        start, _ = offsets[slot]
        for off, v in enumerate(sorted(cls)):
            mapping[v] = start + off

    part_of = [0] * g.n
    for idx, (start, s) in enumerate(offsets):
        for t in range(start, start + s):
            part_of[t] = idx
    for a in range(g.n):
        for b in range(a + 1, g.n):
            target_edge = part_of[mapping[a]] != part_of[mapping[b]]
            if g.has_edge(a, b) != target_edge:
                return False, None
    return True, tuple(mapping)
