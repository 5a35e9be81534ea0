"""Finite presentations and HLT-style coset enumeration.

Words are tuples of signed 1-based generator indexes: ``2`` is the second
generator, ``-2`` its inverse.  The enumerator is the relator-scanning (HLT)
strategy with coincidence processing; completed tables are compressed and
renumbered by breadth-first discovery so identical inputs always produce
identical coset numbering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import CertificateError, EnumerationCapped, ParseError, ValidationError
from .groups import GroupTable, closure_mask

DEFAULT_MAX_COSETS = 100_000

_DEFAULT_NAMES = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator count plus relator words."""

    generator_count: int
    relators: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.generator_count < 0:
            raise ValidationError("generator count must be >= 0")
        rels = tuple(tuple(w) for w in self.relators)
        object.__setattr__(self, "relators", rels)
        for w in rels:
            for letter in w:
                if letter == 0 or abs(letter) > self.generator_count:
                    raise ValidationError(f"relator letter {letter} out of range")
        if not self.names:
            object.__setattr__(
                self, "names",
                tuple(_DEFAULT_NAMES[i % 26] + ("" if i < 26 else str(i // 26))
                      for i in range(self.generator_count)))
        elif len(self.names) != self.generator_count:
            raise ValidationError("generator name list length mismatch")

    def format(self) -> str:
        rels = ", ".join(format_word(w, self.names) for w in self.relators)
        return f"Pres[{','.join(self.names)} | {rels}]"


def inverse_word(w) -> tuple[int, ...]:
    return tuple(-x for x in reversed(w))


def word_power(w, k: int) -> tuple[int, ...]:
    if k < 0:
        return inverse_word(word_power(w, -k))
    return tuple(w) * k


def commutator_word(a, b) -> tuple[int, ...]:
    """[a, b] = a^-1 b^-1 a b."""
    return inverse_word(a) + inverse_word(b) + tuple(a) + tuple(b)


def format_word(w, names) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        count = j - i
        name = names[abs(w[i]) - 1]
        exp = count if w[i] > 0 else -count
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return "*".join(parts)


_WORD_TERM = re.compile(r"^([A-Za-z_]\w*)(?:\^(-?\d+))?$")


def parse_word(text: str, name_index: dict[str, int]) -> tuple[int, ...]:
    """Parse ``b*a^-1*b^2`` into a signed word using 1-based indexes."""
    word: list[int] = []
    for term in text.split("*"):
        term = term.strip()
        if term == "1" and not word and text.strip() == "1":
            return ()
        m = _WORD_TERM.match(term)
        if not m:
            raise ParseError(f"malformed word term: {term!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in name_index:
            raise ParseError(f"unknown generator {name!r}")
        letter = name_index[name] + 1
        if exp < 0:
            letter, exp = -letter, -exp
        word.extend([letter] * exp)
    return tuple(word)


def parse_presentation(text: str) -> Presentation:
    """Parse ``Pres[a,b | a^4, b^2, b*a*b^-1*a]`` (wrapper optional)."""
    s = text.strip()
    if s.startswith("Pres[") and s.endswith("]"):
        s = s[5:-1]
    if "|" not in s:
        raise ParseError("presentation needs a '|' separating generators from relators")
    gen_part, rel_part = s.split("|", 1)
    names = tuple(t.strip() for t in gen_part.split(",") if t.strip())
    if not names or len(set(names)) != len(names):
        raise ParseError(f"bad generator list: {gen_part!r}")
    index = {name: i for i, name in enumerate(names)}
    relators = tuple(parse_word(t, index)
                     for t in rel_part.split(",") if t.strip())
    return Presentation(len(names), relators, names)


# ---------------------------------------------------------------------------
# coset enumeration


@dataclass(frozen=True)
class CosetTable:
    """Result of a coset enumeration.

    ``rows[c]`` lists the target of coset ``c`` under each signed generator;
    column 2i is generator i, column 2i+1 its inverse.  ``rows`` is empty
    when the enumeration was capped.
    """

    rows: tuple[tuple[int, ...], ...]
    live_count: int
    status: str  # "complete" | "capped"


def _word_to_cols(word) -> tuple[int, ...]:
    return tuple(2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in word)


class _Enumerator:
    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.table = [[None] * self.ncols]
        self.p = [0]

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def define(self, alpha: int, col: int):
        if len(self.table) >= self.max_cosets:
            raise EnumerationCapped(
                f"coset enumeration exceeded max_cosets={self.max_cosets}")
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(beta)
        self.table[alpha][col] = beta
        self.table[beta][col ^ 1] = alpha

    def merge(self, a: int, b: int, queue: list):
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = (a, b) if a < b else (b, a)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, alpha: int, beta: int):
        table = self.table
        queue: list[int] = []
        self.merge(alpha, beta, queue)
        qi = 0
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            for col in range(self.ncols):
                delta = table[gamma][col]
                if delta is None:
                    continue
                table[delta][col ^ 1] = None
                mu = self.rep(gamma)
                nu = self.rep(delta)
                t = table[mu][col]
                if t is not None:
                    self.merge(nu, t, queue)
                else:
                    t = table[nu][col ^ 1]
                    if t is not None:
                        self.merge(mu, t, queue)
                    else:
                        table[mu][col] = nu
                        table[nu][col ^ 1] = mu

    def scan_and_fill(self, alpha: int, word_cols):
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(word_cols) - 1
        while True:
            while i <= j and table[f][word_cols[i]] is not None:
                f = table[f][word_cols[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word_cols[j] ^ 1] is not None:
                b = table[b][word_cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][word_cols[i]] = b
                table[b][word_cols[i] ^ 1] = f
                return
            self.define(f, word_cols[i])

    def run(self, relator_cols, subgroup_cols):
        for w in subgroup_cols:
            if w:
                self.scan_and_fill(0, w)
        alpha = 0
        while alpha < len(self.table):
            if self.p[alpha] == alpha:
                for rel in relator_cols:
                    if not rel:
                        continue
                    self.scan_and_fill(alpha, rel)
                    if self.p[alpha] != alpha:
                        break
                if self.p[alpha] == alpha:
                    for col in range(self.ncols):
                        if self.table[alpha][col] is None:
                            self.define(alpha, col)
            alpha += 1

    def compressed_rows(self):
        live = [c for c in range(len(self.table)) if self.p[c] == c]
        renum = {c: i for i, c in enumerate(live)}
        rows = []
        for c in live:
            row = []
            for col in range(self.ncols):
                t = self.table[c][col]
                if t is None:
                    raise CertificateError("incomplete coset table after enumeration")
                row.append(renum[self.rep(t)])
            rows.append(row)
        return rows


def _standardize(rows):
    """Renumber cosets by breadth-first discovery from coset 0."""
    n = len(rows)
    if n == 0:
        return rows
    ncols = len(rows[0])
    new_of_old = {0: 0}
    order = [0]
    for c in order:
        for col in range(ncols):
            t = rows[c][col]
            if t not in new_of_old:
                new_of_old[t] = len(order)
                order.append(t)
    out = [[0] * ncols for _ in range(n)]
    for old, new in new_of_old.items():
        for col in range(ncols):
            out[new][col] = new_of_old[rows[old][col]]
    return out


def coset_enumerate(pres: Presentation, subgroup_generators=(),
                    max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate cosets of the subgroup generated by the given words.

    Returns a complete table whose live count is the subgroup index, or a
    ``capped`` result if ``max_cosets`` was exhausted (the presented group
    may then be larger than expected, or infinite).
    """
    if max_cosets < 1:
        raise ValidationError("max_cosets must be >= 1")
    enum = _Enumerator(pres.generator_count, max_cosets)
    rel_cols = [_word_to_cols(w) for w in pres.relators]
    sub_cols = [_word_to_cols(w) for w in subgroup_generators]
    try:
        enum.run(rel_cols, sub_cols)
    except EnumerationCapped:
        live = sum(1 for c in range(len(enum.p)) if enum.p[c] == c)
        return CosetTable(rows=(), live_count=live, status="capped")
    rows = _standardize(enum.compressed_rows())
    table = CosetTable(rows=tuple(tuple(r) for r in rows),
                       live_count=len(rows), status="complete")
    _validate_table(table, rel_cols, sub_cols)
    return table


def _validate_table(ct: CosetTable, rel_cols, sub_cols):
    n = ct.live_count
    ncols = len(ct.rows[0]) if ct.rows else 0
    for col in range(ncols):
        seen = {ct.rows[c][col] for c in range(n)}
        if seen != set(range(n)):
            raise CertificateError("generator action is not a permutation of cosets")
    for c in range(n):
        for w in rel_cols:
            x = c
            for col in w:
                x = ct.rows[x][col]
            if x != c:
                raise CertificateError("relator not satisfied on completed table")
    for w in sub_cols:
        x = 0
        for col in w:
            x = ct.rows[x][col]
        if x != 0:
            raise CertificateError("subgroup generator does not fix coset 0")


@lru_cache(maxsize=None)
def presented_order(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    """Order of the presented group; raises EnumerationCapped if unsettled."""
    ct = coset_enumerate(pres, (), max_cosets)
    if ct.status != "complete":
        raise EnumerationCapped(
            f"presentation order not established within {max_cosets} cosets")
    return ct.live_count


def group_from_presentation(pres: Presentation,
                            max_cosets: int = DEFAULT_MAX_COSETS,
                            name=None) -> GroupTable:
    """Regular representation read off a completed coset table.

    Cosets over the trivial subgroup become the elements; labels are the
    shortest positive words found by breadth-first search.
    """
    ct = coset_enumerate(pres, (), max_cosets)
    if ct.status != "complete":
        raise EnumerationCapped(
            f"presentation did not close within max_cosets={max_cosets}")
    n = ct.live_count
    rows = ct.rows
    ngens = pres.generator_count
    words: list[tuple[int, ...] | None] = [None] * n
    words[0] = ()
    order = [0]
    for c in order:
        for g in range(ngens):
            t = rows[c][2 * g]
            if words[t] is None:
                words[t] = words[c] + (g + 1,)
                order.append(t)
    mul = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            x = a
            for letter in words[b]:
                x = rows[x][2 * (letter - 1)]
            mul[a][b] = x
    labels = ["e" if not w else format_word(w, pres.names) for w in words]
    return GroupTable(mul, labels, name=name or pres.format(),
                      origin="presentation", check_associativity=False)


def satisfies_presentation(G: GroupTable, pres: Presentation,
                           max_cosets: int = DEFAULT_MAX_COSETS):
    """Does G realize the presentation?  Returns (bool, witness tuple).

    True iff the presented group has order |G| and some tuple of elements of
    G satisfies every relator and generates G.  Candidate images are pruned
    by the element orders implied by single-letter power relators, and a
    tuple is abandoned as soon as any fully-assigned relator fails.
    """
    po = presented_order(pres, max_cosets)
    if po != G.order:
        return False, None
    k = pres.generator_count
    if k == 0:
        return (G.order == 1), (() if G.order == 1 else None)

    implied: dict[int, int] = {}
    for w in pres.relators:
        letters = {abs(x) for x in w}
        if len(letters) == 1 and w:
            g = letters.pop()
            implied[g] = _gcd(implied.get(g, 0), len(w))
    orders = G.element_orders()
    candidates: list[list[int]] = []
    for g in range(1, k + 1):
        m = implied.get(g, 0)
        if m:
            pool = [x for x in range(G.order) if m % orders[x] == 0]
            pool.sort(key=lambda x: (orders[x] != m, x))
        else:
            pool = list(range(G.order))
        candidates.append(pool)

    by_depth: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
    for w in pres.relators:
        if w:
            by_depth[max(abs(x) for x in w) - 1].append(w)

    mul, inv = G.mul, G.inv
    images = [0] * k

    def relator_holds(w) -> bool:
        x = 0
        for letter in w:
            e = images[letter - 1] if letter > 0 else inv[images[-letter - 1]]
            x = mul[x][e]
        return x == 0

    def search(depth: int):
        if depth == k:
            mask, _ = closure_mask(mul, list(images))
            return mask == G.full_mask
        for cand in candidates[depth]:
            images[depth] = cand
            if all(relator_holds(w) for w in by_depth[depth]):
                if search(depth + 1):
                    return True
        return False

    if search(0):
        return True, tuple(images)
    return False, None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
