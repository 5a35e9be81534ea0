"""Finite groups as explicit multiplication tables, plus structural probes.

Conventions used throughout the package:

* element 0 is the identity of every group;
* elements are ordered deterministically by the constructor that produced
  the table (breadth-first discovery order for permutation closures);
* subsets of elements are carried as Python int bit-masks.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass

from .arith import factor_multiset
from .bitset import iter_bits
from .errors import CapExceeded, ParseError, ValidationError

ASSOCIATIVITY_FULL_CAP = 256
ASSOCIATIVITY_SAMPLES = 10_000
DEFAULT_MAX_ORDER = 20_000


class GroupTable:
    """A finite group given by its full multiplication table.

    ``mul[a][b]`` is the product ab and ``inv[a]`` the inverse of a.  Tables
    are immutable after construction and safe to share across tasks.
    """

    __slots__ = ("order", "mul", "inv", "labels", "name", "origin",
                 "_orders", "_gens", "_abelian")

    def __init__(self, mul, labels=None, name="G", origin="table", *,
                 check_associativity=True):
        n = len(mul)
        if n == 0:
            raise ValidationError("a group table needs at least one element")
        rows = [list(r) for r in mul]
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValidationError(f"row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise ValidationError(f"row {i} contains invalid entry {v!r}")
        for x in range(n):
            if rows[0][x] != x or rows[x][0] != x:
                raise ValidationError("element 0 is not a two-sided identity")
        for i, row in enumerate(rows):
            if len(set(row)) != n:
                raise ValidationError(f"row {i} is not a permutation of the elements")
        for j in range(n):
            if len({rows[i][j] for i in range(n)}) != n:
                raise ValidationError(f"column {j} is not a permutation of the elements")
        inv = [0] * n
        for i, row in enumerate(rows):
            inv[i] = row.index(0)
        for i in range(n):
            if rows[inv[i]][i] != 0:
                raise ValidationError(f"element {i} has no two-sided inverse")
        if check_associativity:
            self._check_associativity(rows, n)

        self.order = n
        self.mul = rows
        self.inv = inv
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ValidationError("label list length does not match order")
        self.labels = [str(s) for s in labels]
        self.name = name
        self.origin = origin
        self._orders = None
        self._gens = None
        self._abelian = None

    @staticmethod
    def _check_associativity(rows, n):
        if n <= ASSOCIATIVITY_FULL_CAP:
            rng = range(n)
            for a in rng:
                ra = rows[a]
                for b in rng:
                    rab = rows[ra[b]]
                    rb = rows[b]
                    for c in rng:
                        if rab[c] != ra[rb[c]]:
                            raise ValidationError(
                                f"associativity fails at triple ({a}, {b}, {c})")
        else:
            rng = random.Random(0xFAC7)
            for _ in range(ASSOCIATIVITY_SAMPLES):
                a = rng.randrange(n)
                b = rng.randrange(n)
                c = rng.randrange(n)
                if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                    raise ValidationError(
                        f"associativity fails at sampled triple ({a}, {b}, {c})")

    def __repr__(self):
        return f"<GroupTable {self.name!r} of order {self.order}>"

    @property
    def identity(self) -> int:
        return 0

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def elements(self) -> range:
        return range(self.order)

    def element_orders(self) -> list[int]:
        if self._orders is None:
            orders = [1] * self.order
            for x in range(1, self.order):
                k, y = 1, x
                while y != 0:
                    y = self.mul[y][x]
                    k += 1
                orders[x] = k
            self._orders = orders
        return self._orders

    def element_order(self, x: int) -> int:
        return self.element_orders()[x]

    def order_histogram(self) -> tuple[tuple[int, int], ...]:
        counts: dict[int, int] = {}
        for o in self.element_orders():
            counts[o] = counts.get(o, 0) + 1
        return tuple(sorted(counts.items()))

    def exponent(self) -> int:
        return math.lcm(*self.element_orders())

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        y = 0
        while k:
            if k & 1:
                y = self.mul[y][x]
            k >>= 1
            if k:
                x = self.mul[x][x]
        return y

    def conjugate(self, x: int, g: int) -> int:
        """x^g = g^-1 x g."""
        return self.mul[self.mul[self.inv[g]][x]][g]

    def commutator(self, x: int, y: int) -> int:
        """[x, y] = x^-1 y^-1 x y."""
        return self.mul[self.mul[self.mul[self.inv[x]][self.inv[y]]][x]][y]

    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = all(
                self.mul[a][b] == self.mul[b][a]
                for a in range(self.order) for b in range(a + 1, self.order))
        return self._abelian

    def generating_set(self) -> tuple[int, ...]:
        """A deterministic (greedy, not necessarily minimal) generating set."""
        if self._gens is None:
            gens: list[int] = []
            mask = 1
            for x in range(1, self.order):
                if not mask >> x & 1:
                    gens.append(x)
                    mask, _ = closure_mask(self.mul, gens)
                    if mask == self.full_mask:
                        break
            self._gens = tuple(gens)
        return self._gens

    def closure(self, generators) -> int:
        """Bit-mask of the subgroup generated by the given elements."""
        mask, _ = closure_mask(self.mul, list(generators))
        return mask


def closure_mask(mul, gens):
    """Mask and element list of the subgroup generated by ``gens``.

    Breadth-first orbit of the identity under right multiplication; inverses
    are not needed since every element of a finite group is a positive power.
    """
    mask = 1
    elems = [0]
    queue = []
    for g in gens:
        if not mask >> g & 1:
            mask |= 1 << g
            elems.append(g)
            queue.append(g)
    while queue:
        x = queue.pop()
        row = mul[x]
        for s in gens:
            y = row[s]
            if not mask >> y & 1:
                mask |= 1 << y
                elems.append(y)
                queue.append(y)
    return mask, elems


def extend_closure(mul, mask, elems, gens, g):
    """Mask/elements of <H, g> given a subgroup H = (mask, elems, gens)."""
    new_mask = mask
    new_elems = list(elems)
    queue = []
    for h in elems:  # the coset Hg; covers products of old elements with g
        y = mul[h][g]
        if not new_mask >> y & 1:
            new_mask |= 1 << y
            new_elems.append(y)
            queue.append(y)
    allgens = list(gens) + [g]
    while queue:
        x = queue.pop()
        row = mul[x]
        for s in allgens:
            y = row[s]
            if not new_mask >> y & 1:
                new_mask |= 1 << y
                new_elems.append(y)
                queue.append(y)
    return new_mask, new_elems


def conjugate_mask(G: GroupTable, mask: int, g: int) -> int:
    """Mask of g^-1 S g."""
    mul = G.mul
    ig = G.inv[g]
    out = 0
    for x in iter_bits(mask):
        out |= 1 << mul[mul[ig][x]][g]
    return out


def coset_mask(G: GroupTable, mask: int, g: int) -> int:
    """Mask of the right coset S·g."""
    mul = G.mul
    out = 0
    for x in iter_bits(mask):
        out |= 1 << mul[x][g]
    return out


# ---------------------------------------------------------------------------
# permutation input


@dataclass(frozen=True)
class PermutationGenerators:
    """Generators of a permutation group on points 1..degree.

    Images are stored 0-based: ``images[i]`` is where point i+1 goes.
    """

    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for p in self.generators:
            if len(p) != self.degree or sorted(p) != list(range(self.degree)):
                raise ValidationError(f"generator {p} is not a permutation "
                                      f"of {self.degree} points")

    @classmethod
    def from_cycles(cls, cycle_lists, degree=None):
        """Build from 1-based cycle lists, e.g. ``[[[1,2],[3,4]], [[1,2,3]]]``."""
        perms = []
        maxpt = degree or 1
        for cycles in cycle_lists:
            for c in cycles:
                maxpt = max(maxpt, max(c, default=1))
        for cycles in cycle_lists:
            perms.append(_perm_from_cycles(cycles, maxpt))
        return cls(maxpt, tuple(perms))

    @classmethod
    def from_texts(cls, texts, degree=None):
        all_cycles = [parse_cycles(t) for t in texts]
        return cls.from_cycles(all_cycles, degree)


def parse_cycles(text: str) -> list[list[int]]:
    """Parse cycle notation like ``(1 2 3)(4,5)`` into 1-based cycle lists."""
    s = text.strip()
    pieces = re.findall(r"\(([^()]*)\)", s)
    leftover = re.sub(r"\(([^()]*)\)", "", s).strip()
    if leftover or (not pieces and s):
        raise ParseError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in pieces:
        pts = [p for p in re.split(r"[,\s]+", body.strip()) if p]
        if not pts:
            continue
        try:
            nums = [int(p) for p in pts]
        except ValueError:
            raise ParseError(f"malformed cycle: ({body})") from None
        if any(v < 1 for v in nums):
            raise ParseError(f"cycle points must be >= 1: ({body})")
        cycles.append(nums)
    return cycles


def _perm_from_cycles(cycles, degree):
    images = list(range(degree))
    used = set()
    for cyc in cycles:
        for v in cyc:
            if v > degree:
                raise ParseError(f"cycle point {v} exceeds degree {degree}")
            if v in used:
                raise ParseError(f"cycles are not disjoint at point {v}")
            used.add(v)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b - 1
    return tuple(images)


def compose(p, q):
    """Apply p first, then q."""
    return tuple(q[x] for x in p)


def cycle_string(images) -> str:
    n = len(images)
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start] or images[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = images[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = images[x]
        parts.append("(" + " ".join(str(v + 1) for v in cyc) + ")")
    return "".join(parts) or "()"


def group_from_permutations(gens, max_order: int = DEFAULT_MAX_ORDER,
                            name=None) -> GroupTable:
    """Closure of a set of permutations, as a multiplication table.

    Elements are ordered by breadth-first discovery from the identity, with
    generators applied on the right in input order.
    """
    if isinstance(gens, PermutationGenerators):
        pg = gens
    else:
        pg = PermutationGenerators.from_texts(list(gens))
    identity = tuple(range(pg.degree))
    elems = [identity]
    index = {identity: 0}
    for x in elems:
        for g in pg.generators:
            y = compose(x, g)
            if y not in index:
                if len(elems) >= max_order:
                    raise CapExceeded(
                        f"permutation closure exceeded max_order={max_order}")
                index[y] = len(elems)
                elems.append(y)
    n = len(elems)
    mul = [[0] * n for _ in range(n)]
    for i, p in enumerate(elems):
        row = mul[i]
        for j, q in enumerate(elems):
            row[j] = index[compose(p, q)]
    labels = [cycle_string(p) for p in elems]
    if name is None:
        name = "Perm[" + "; ".join(cycle_string(g) for g in pg.generators) + "]"
    return GroupTable(mul, labels, name=name, origin="permutations",
                      check_associativity=False)


# ---------------------------------------------------------------------------
# product and quotient constructions


def direct_product(A: GroupTable, B: GroupTable, name=None) -> GroupTable:
    """Direct product; element (a, b) has index a*|B| + b."""
    na, nb = A.order, B.order
    n = na * nb
    mul = [[0] * n for _ in range(n)]
    amul, bmul = A.mul, B.mul
    for a1 in range(na):
        for b1 in range(nb):
            row = mul[a1 * nb + b1]
            ra = amul[a1]
            rb = bmul[b1]
            for a2 in range(na):
                base = ra[a2] * nb
                col = a2 * nb
                for b2 in range(nb):
                    row[col + b2] = base + rb[b2]
    labels = [f"({A.labels[a]},{B.labels[b]})"
              for a in range(na) for b in range(nb)]
    return GroupTable(mul, labels, name=name or f"{A.name}x{B.name}",
                      origin="product", check_associativity=False)


def semidirect_product(N: GroupTable, H: GroupTable, action,
                       name=None) -> GroupTable:
    """Semidirect product N ⋊ H for a left action of H on N by automorphisms.

    ``action`` maps each element of H to a permutation of N's elements
    (callable or indexable).  Multiplication is
    (n1, h1)(n2, h2) = (n1 · action(h1)(n2), h1 h2).
    """
    nn, nh = N.order, H.order
    if callable(action):
        acts = [tuple(action(h)) for h in range(nh)]
    else:
        acts = [tuple(action[h]) for h in range(nh)]
    for h, perm in enumerate(acts):
        if len(perm) != nn or sorted(perm) != list(range(nn)):
            raise ValidationError(f"action of element {h} is not a permutation of N")
        for x in range(nn):
            for y in range(nn):
                if perm[N.mul[x][y]] != N.mul[perm[x]][perm[y]]:
                    raise ValidationError(
                        f"action of element {h} is not an automorphism "
                        f"(fails at pair ({x}, {y}))")
    pairs = (range(nh), range(nh)) if nh <= 64 else (H.generating_set(), range(nh))
    for h1 in pairs[0]:
        a1 = acts[h1]
        for h2 in pairs[1]:
            a12 = acts[H.mul[h1][h2]]
            a2 = acts[h2]
            if any(a12[x] != a1[a2[x]] for x in range(nn)):
                raise ValidationError(
                    f"action is not a homomorphism (fails at pair ({h1}, {h2}))")
    n = nn * nh
    mul = [[0] * n for _ in range(n)]
    for n1 in range(nn):
        for h1 in range(nh):
            row = mul[n1 * nh + h1]
            act = acts[h1]
            rn = N.mul[n1]
            rh = H.mul[h1]
            for n2 in range(nn):
                tn = rn[act[n2]] * nh
                col = n2 * nh
                for h2 in range(nh):
                    row[col + h2] = tn + rh[h2]
    labels = [f"({N.labels[x]},{H.labels[h]})"
              for x in range(nn) for h in range(nh)]
    return GroupTable(mul, labels, name=name or f"{N.name}:{H.name}",
                      origin="semidirect", check_associativity=False)


def quotient_group(G: GroupTable, normal_members: int, name=None):
    """Quotient of G by a normal subgroup given as a member bit-mask.

    Returns ``(Q, projection)`` where cosets are ordered by smallest member
    and ``projection[x]`` is the coset index of element x.
    """
    mask = normal_members
    if not mask & 1:
        raise ValidationError("normal subgroup must contain the identity")
    members = list(iter_bits(mask))
    for a in members:
        for b in members:
            if not mask >> G.mul[a][b] & 1:
                raise ValidationError("subset is not closed under multiplication")
    for g in G.generating_set():
        if conjugate_mask(G, mask, g) != mask:
            raise ValidationError("subgroup is not normal")
    n = G.order
    proj = [-1] * n
    reps = []
    for g in range(n):
        if proj[g] >= 0:
            continue
        ci = len(reps)
        reps.append(g)
        for x in iter_bits(coset_mask(G, mask, g)):
            proj[x] = ci
    m = len(reps)
    mul = [[0] * m for _ in range(m)]
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            mul[i][j] = proj[G.mul[r][s]]
    labels = [G.labels[r] for r in reps]
    q = GroupTable(mul, labels, name=name or f"{G.name}/{len(members)}",
                   origin="quotient", check_associativity=False)
    return q, tuple(proj)


# ---------------------------------------------------------------------------
# structure probes


@dataclass(frozen=True)
class StructureSummary:
    """Element-level invariants of a group."""

    order_factorization: tuple[int, ...]
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool
    is_perfect: bool
    center: "object"      # Subgroup
    derived: "object"     # Subgroup
    exponent: int
    min_generators: int
    generators: tuple[int, ...]


def center_mask(G: GroupTable) -> int:
    n = G.order
    mul = G.mul
    out = 0
    for x in range(n):
        row = mul[x]
        if all(row[y] == mul[y][x] for y in range(n)):
            out |= 1 << x
    return out


def commutator_mask(G: GroupTable, a_mask: int, b_mask: int) -> int:
    """Subgroup generated by commutators [a, b], a in A, b in B."""
    gens = set()
    for a in iter_bits(a_mask):
        for b in iter_bits(b_mask):
            c = G.commutator(a, b)
            if c:
                gens.add(c)
    mask, _ = closure_mask(G.mul, sorted(gens))
    return mask


def derived_series(G: GroupTable) -> list[int]:
    series = [G.full_mask]
    while True:
        nxt = commutator_mask(G, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt == 1:
            return series


def lower_central_series(G: GroupTable) -> list[int]:
    series = [G.full_mask]
    while True:
        nxt = commutator_mask(G, series[-1], G.full_mask)
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt == 1:
            return series


def min_generators(G: GroupTable) -> tuple[int, tuple[int, ...]]:
    """Smallest k admitting a generating k-tuple, with a witness tuple.

    Breadth-first search over subgroups, each step adjoining one generator;
    extension results are cached and extension candidates are restricted to
    one representative per coset, which loses no subgroup states.
    """
    n = G.order
    full = G.full_mask
    if n == 1:
        return 0, ()
    mul = G.mul
    level = {1: ()}          # subgroup mask -> witness generator tuple
    seen = {1}
    ext_cache: dict[tuple[int, int], int] = {}
    depth = 0
    while level:
        depth += 1
        nxt: dict[int, tuple[int, ...]] = {}
        for mask, wit in level.items():
            elems = list(iter_bits(mask))
            covered = mask
            for g in range(1, n):
                if covered >> g & 1:
                    continue
                key = (mask, g)
                new_mask = ext_cache.get(key)
                if new_mask is None:
                    new_mask, _ = extend_closure(mul, mask, elems, wit, g)
                    ext_cache[key] = new_mask
                covered |= coset_mask(G, mask, g)
                if new_mask == full:
                    return depth, wit + (g,)
                if new_mask not in seen:
                    seen.add(new_mask)
                    nxt[new_mask] = wit + (g,)
        level = nxt
    raise AssertionError("generation search failed to reach the full group")


def abelian_invariants(G: GroupTable) -> tuple[int, ...] | None:
    """Elementary divisors (prime powers, ascending) of an abelian group.

    Recovered from the counts c_i = #{x : x^(p^i) = e}: the increments
    log_p(c_i / c_{i-1}) form the conjugate of the type partition.
    """
    if not G.is_abelian():
        return None
    if G.order == 1:
        return ()
    orders = G.element_orders()
    divisors: list[int] = []
    for p in sorted(set(factor_multiset(G.order))):
        counts = [1]
        while True:
            pi = p ** len(counts)
            c = sum(1 for o in orders if pi % o == 0)
            if c == counts[-1]:
                break
            counts.append(c)
        conj = []
        for j in range(1, len(counts)):
            ratio = counts[j] // counts[j - 1]
            e = 0
            while ratio > 1:
                ratio //= p
                e += 1
            conj.append(e)
        nparts = conj[0] if conj else 0
        parts = [sum(1 for d in conj if d >= j + 1) for j in range(nparts)]
        divisors.extend(p ** part for part in parts)
    return tuple(sorted(divisors))


def structure_probe(G: GroupTable) -> StructureSummary:
    """Derived/lower-central series, center, and generation rank of G."""
    from .subgroups import Subgroup

    dseries = derived_series(G)
    lseries = lower_central_series(G)
    d, gens = min_generators(G)
    return StructureSummary(
        order_factorization=factor_multiset(G.order) if G.order > 1 else (),
        is_abelian=G.is_abelian(),
        is_nilpotent=lseries[-1] == 1,
        is_solvable=dseries[-1] == 1,
        is_perfect=len(dseries) == 1 or dseries[1] == G.full_mask,
        center=Subgroup.from_members(G, center_mask(G)),
        derived=Subgroup.from_members(G, dseries[1] if len(dseries) > 1 else G.full_mask),
        exponent=G.exponent(),
        min_generators=d,
        generators=gens,
    )


def is_solvable(G: GroupTable) -> bool:
    return derived_series(G)[-1] == 1
