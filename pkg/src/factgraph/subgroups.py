"""Complete subgroup lattices: Frattini subgroup, maximality, conjugacy,
normality, and set-product profiles of subgroup pairs.

Subgroup members are bit-masks over element indexes of the parent table.
Lattice enumeration is a bottom-up closure: seed with every cyclic subgroup,
then repeatedly adjoin one generator to a listed subgroup until fixpoint.
Extension candidates are restricted to one representative per right coset
(<H, hg> = <H, g> for h in H), which loses no subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitset import iter_bits
from .errors import CapExceeded, ValidationError
from .groups import (GroupTable, closure_mask, conjugate_mask, coset_mask,
                     extend_closure)

DEFAULT_ORDER_CAP = 200
DEFAULT_TWO_POWER_CAP = 64
DEFAULT_SUBGROUP_CAP = 20_000


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a GroupTable as a membership bit-mask."""

    parent: GroupTable
    members: int
    order: int

    @classmethod
    def from_members(cls, parent: GroupTable, members: int) -> "Subgroup":
        return cls(parent, members, members.bit_count())

    def elements(self):
        return iter_bits(self.members)

    def contains_element(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def contains(self, other: "Subgroup") -> bool:
        return other.members & ~self.members == 0

    def is_trivial(self) -> bool:
        return self.members == 1

    def is_whole_group(self) -> bool:
        return self.order == self.parent.order

    def generator_elements(self) -> tuple[int, ...]:
        """Greedy short generating elements (largest order first), for labels."""
        if self.members == 1:
            return ()
        G = self.parent
        orders = G.element_orders()
        pool = sorted(self.elements(), key=lambda x: (-orders[x], x))
        gens: list[int] = []
        mask = 1
        for x in pool:
            if not mask >> x & 1:
                gens.append(x)
                mask, _ = closure_mask(G.mul, gens)
                if mask == self.members:
                    break
        return tuple(gens)

    def label(self) -> str:
        if self.members == 1:
            return "1"
        names = [self.parent.labels[g] for g in self.generator_elements()]
        return "<" + ",".join(names) + ">"

    def __repr__(self):
        return f"Subgroup(order={self.order}, label={self.label()!r})"


class SubgroupLattice:
    """All subgroups of a group, sorted by (order, member mask)."""

    __slots__ = ("group", "subgroups", "by_mask", "maximal_ids", "frattini_id",
                 "full_id", "normal", "conjugacy_class", "generators",
                 "maximal_set")

    def __init__(self, group, subgroups, by_mask, maximal_ids, frattini_id,
                 full_id, normal, conjugacy_class, generators):
        self.group = group
        self.subgroups = subgroups
        self.by_mask = by_mask
        self.maximal_ids = maximal_ids
        self.frattini_id = frattini_id
        self.full_id = full_id
        self.normal = normal
        self.conjugacy_class = conjugacy_class
        self.generators = generators
        self.maximal_set = frozenset(maximal_ids)

    def __len__(self):
        return len(self.subgroups)

    def subgroup(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def id_of(self, members: int) -> int:
        return self.by_mask[members]

    def proper_ids(self) -> list[int]:
        return [i for i in range(len(self.subgroups)) if i != self.full_id]

    def frattini(self) -> Subgroup:
        return self.subgroups[self.frattini_id]

    def is_maximal(self, i: int) -> bool:
        return i in self.maximal_set

    def __repr__(self):
        return (f"<SubgroupLattice of {self.group.name}: {len(self.subgroups)} "
                f"subgroups, {len(self.maximal_ids)} maximal>")


def enumerate_subgroups(G: GroupTable, *, max_order: int | None = None,
                        max_subgroups: int = DEFAULT_SUBGROUP_CAP) -> SubgroupLattice:
    """Enumerate the complete subgroup lattice of G.

    Default order caps: 200 in general, 64 when |G| is a power of two
    (elementary abelian 2-groups explode combinatorially).  Pass
    ``max_order`` to override.
    """
    n = G.order
    if max_order is None:
        max_order = DEFAULT_TWO_POWER_CAP if n & (n - 1) == 0 else DEFAULT_ORDER_CAP
    if n > max_order:
        raise CapExceeded(f"group order {n} exceeds lattice cap {max_order}")
    mul = G.mul

    found: dict[int, tuple[list[int], tuple[int, ...]]] = {}
    work: list[int] = []

    def record(mask, elems, gens):
        if mask not in found:
            if len(found) >= max_subgroups:
                raise CapExceeded(
                    f"subgroup count exceeded cap {max_subgroups}")
            found[mask] = (elems, gens)
            work.append(mask)

    record(1, [0], ())
    for g in range(1, n):
        mask, elems = closure_mask(mul, [g])
        record(mask, elems, (g,))

    full = G.full_mask
    maximal_masks = []
    wi = 0
    while wi < len(work):
        mask = work[wi]
        wi += 1
        elems, gens = found[mask]
        if mask == full:
            continue
        covered = mask
        all_extensions_full = True
        for g in range(1, n):
            if covered >> g & 1:
                continue
            covered |= coset_mask(G, mask, g)
            new_mask, new_elems = extend_closure(mul, mask, elems, gens, g)
            if new_mask != full:
                all_extensions_full = False
            record(new_mask, new_elems, gens + (g,))
        if all_extensions_full:
            maximal_masks.append(mask)

    order_key = sorted(found, key=lambda m: (m.bit_count(), m))
    subgroups = tuple(Subgroup.from_members(G, m) for m in order_key)
    by_mask = {m: i for i, m in enumerate(order_key)}
    generators = tuple(found[m][1] for m in order_key)
    full_id = by_mask[full]
    maximal_ids = tuple(sorted(by_mask[m] for m in maximal_masks))

    if maximal_ids:
        phi = full
        for i in maximal_ids:
            phi &= subgroups[i].members
    else:
        phi = full  # no maximal subgroups only for the trivial group
    frattini_id = by_mask[phi]

    gens_of_g = G.generating_set()
    conj_class = [-1] * len(subgroups)
    next_class = 0
    for i in range(len(subgroups)):
        if conj_class[i] >= 0:
            continue
        orbit = {subgroups[i].members}
        queue = [subgroups[i].members]
        while queue:
            m = queue.pop()
            for g in gens_of_g:
                c = conjugate_mask(G, m, g)
                if c not in orbit:
                    orbit.add(c)
                    queue.append(c)
        for m in orbit:
            conj_class[by_mask[m]] = next_class
        next_class += 1
    class_size: dict[int, int] = {}
    for c in conj_class:
        class_size[c] = class_size.get(c, 0) + 1
    normal = tuple(class_size[c] == 1 for c in conj_class)

    for s in subgroups:
        if G.order % s.order:
            raise ValidationError("subgroup order does not divide group order")

    return SubgroupLattice(G, subgroups, by_mask, maximal_ids, frattini_id,
                           full_id, normal, tuple(conj_class), generators)


def frattini_subgroup(lattice: SubgroupLattice) -> Subgroup:
    """Intersection of all maximal subgroups (the whole group if none)."""
    return lattice.frattini()


def product_set(G: GroupTable, h_members: int, k_members: int) -> set[int]:
    """The set product HK = {hk}, computed explicitly."""
    mul = G.mul
    ks = list(iter_bits(k_members))
    out: set[int] = set()
    for h in iter_bits(h_members):
        row = mul[h]
        out.update(map(row.__getitem__, ks))
    return out


def product_set_mask(G: GroupTable, h_members: int, k_members: int) -> int:
    out = 0
    for x in product_set(G, h_members, k_members):
        out |= 1 << x
    return out


class ProductProfile:
    """Intersection/product data for a pair of subgroups of one group.

    ``product_size`` uses the index formula |HK| = |H||K| / |H∩K|, which
    holds for the set product even when HK is not a subgroup.  The
    ``permutes`` flag genuinely compares the two product sets (needed for
    non-normal subgroups); both are computed once and cached.
    """

    __slots__ = ("h", "k", "intersection_order", "product_size", "covers",
                 "_permutes", "_hk_mask")

    def __init__(self, h: Subgroup, k: Subgroup):
        if h.parent is not k.parent:
            raise ValidationError("subgroups have different parent groups")
        self.h = h
        self.k = k
        inter = h.members & k.members
        self.intersection_order = inter.bit_count()
        self.product_size = h.order * k.order // self.intersection_order
        self.covers = self.product_size == h.parent.order
        self._permutes = None
        self._hk_mask = None

    @property
    def hk_mask(self) -> int:
        if self._hk_mask is None:
            self._hk_mask = product_set_mask(self.h.parent, self.h.members,
                                             self.k.members)
        return self._hk_mask

    @property
    def permutes(self) -> bool:
        if self._permutes is None:
            kh = product_set_mask(self.h.parent, self.k.members, self.h.members)
            self._permutes = self.hk_mask == kh
        return self._permutes


def product_profile(h: Subgroup, k: Subgroup) -> ProductProfile:
    return ProductProfile(h, k)


@dataclass(frozen=True)
class NormalStructure:
    is_normal: bool
    normalizer: Subgroup
    core: Subgroup
    conjugates: tuple[Subgroup, ...]


def normal_structure(h: Subgroup, lattice: SubgroupLattice) -> NormalStructure:
    """Normalizer, conjugate set, and core of a subgroup."""
    G = h.parent
    norm_mask = 0
    for g in range(G.order):
        if conjugate_mask(G, h.members, g) == h.members:
            norm_mask |= 1 << g
    orbit = {h.members}
    queue = [h.members]
    while queue:
        m = queue.pop()
        for g in G.generating_set():
            c = conjugate_mask(G, m, g)
            if c not in orbit:
                orbit.add(c)
                queue.append(c)
    core = G.full_mask
    for m in orbit:
        core &= m
    conjugates = tuple(lattice.subgroup(lattice.id_of(m)) for m in sorted(orbit))
    return NormalStructure(
        is_normal=len(orbit) == 1,
        normalizer=lattice.subgroup(lattice.id_of(norm_mask)),
        core=lattice.subgroup(lattice.id_of(core)),
        conjugates=conjugates,
    )


def is_factorizable(G: GroupTable, lattice: SubgroupLattice):
    """Does G = HK for proper subgroups H, K?  Returns (bool, witness ids)."""
    n = G.order
    subs = lattice.subgroups
    ids = lattice.proper_ids()
    for ii, i in enumerate(ids):
        hi = subs[i]
        for j in ids[ii + 1:]:
            kj = subs[j]
            if hi.order * kj.order < n:
                continue
            if hi.order * kj.order == n * (hi.members & kj.members).bit_count():
                return True, (i, j)
    return False, None
