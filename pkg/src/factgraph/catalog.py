"""Constructors for the named group families used across the toolkit.

Every family is realized by an explicit table construction (cyclic tables,
split extensions, permutation closures) except G1..G4, which only have
presentations and are built by coset enumeration.  ``catalog_presentation``
returns a defining presentation where one exists, so constructions can be
cross-checked against the presentation machinery.
"""

from __future__ import annotations

from .arith import element_of_order, is_prime, multiplicative_order
from .errors import ValidationError
from .groups import (GroupTable, direct_product, group_from_permutations)
from .presentations import (Presentation, commutator_word, group_from_presentation,
                            inverse_word, word_power)


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ValidationError("cyclic group order must be >= 1")
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["e"] + ["x" if i == 1 else f"x^{i}" for i in range(1, n)]
    return GroupTable(mul, labels, name=f"C{n}", origin="catalog:Cyclic",
                      check_associativity=False)


def abelian_of_type(*divisors: int) -> GroupTable:
    if not divisors or any(d < 2 for d in divisors):
        raise ValidationError("abelian type needs factors >= 2")
    g = cyclic(divisors[0])
    for d in divisors[1:]:
        g = direct_product(g, cyclic(d))
    g.name = "x".join(f"C{d}" for d in divisors)
    return g


def elementary_abelian(p: int, k: int) -> GroupTable:
    if not is_prime(p) or k < 1:
        raise ValidationError(f"elementary abelian needs a prime and k >= 1, "
                              f"got ({p}, {k})")
    g = abelian_of_type(*([p] * k))
    g.name = f"E({p},{k})"
    return g


def split_extension_cyclic(m: int, k: int, t: int, twist: int = 0,
                           gen_names=("a", "b"), name=None) -> GroupTable:
    """Group <a, b : a^m, b^k = a^twist, b^-1 a b = a^t> as a table.

    Element (i, j) = a^i b^j has index i*k + j.  Requires t^k = 1 (mod m)
    and twist*(t-1) = 0 (mod m) so the extension is well defined.
    """
    if m < 1 or k < 1:
        raise ValidationError("cyclic factors must have positive order")
    if pow(t, k, m) != 1 % m:
        raise ValidationError(f"t={t} does not have order dividing {k} mod {m}")
    if twist * (t - 1) % m != 0:
        raise ValidationError(f"twist {twist} is not fixed by the action")
    n = m * k
    tpow = [pow(t, j, m) for j in range(k)]
    mul = [[0] * n for _ in range(n)]
    for i in range(m):
        for j in range(k):
            row = mul[i * k + j]
            tj = tpow[j]
            for i2 in range(m):
                ii = (i + i2 * tj) % m
                col = i2 * k
                for j2 in range(k):
                    jj = j + j2
                    if jj >= k:
                        row[col + j2] = ((ii + twist) % m) * k + (jj - k)
                    else:
                        row[col + j2] = ii * k + jj
    an, bn = gen_names
    labels = []
    for i in range(m):
        for j in range(k):
            parts = []
            if i:
                parts.append(an if i == 1 else f"{an}^{i}")
            if j:
                parts.append(bn if j == 1 else f"{bn}^{j}")
            labels.append("*".join(parts) or "e")
    return GroupTable(mul, labels, name=name or f"<{m}:{k}:{t}>",
                      origin="catalog:split", check_associativity=False)


def dihedral(order: int) -> GroupTable:
    if order < 2 or order % 2:
        raise ValidationError(f"dihedral order must be even, got {order}")
    m = order // 2
    g = split_extension_cyclic(m, 2, m - 1 if m > 1 else 0,
                               gen_names=("r", "s"), name=f"D{order}")
    return g


def generalized_quaternion(order: int) -> GroupTable:
    if order < 8 or order & (order - 1):
        raise ValidationError(
            f"generalized quaternion order must be a power of two >= 8, got {order}")
    m = order // 2
    return split_extension_cyclic(m, 2, m - 1, twist=m // 2,
                                  name=f"Q{order}")


def semidihedral(order: int) -> GroupTable:
    if order < 16 or order & (order - 1):
        raise ValidationError(
            f"semidihedral order must be a power of two >= 16, got {order}")
    m = order // 2
    return split_extension_cyclic(m, 2, m // 2 - 1, gen_names=("u", "v"),
                                  name=f"SD{order}")


def modular_maximal_cyclic(order: int) -> GroupTable:
    if order < 16 or order & (order - 1):
        raise ValidationError(
            f"modular 2-group order must be a power of two >= 16, got {order}")
    m = order // 2
    return split_extension_cyclic(m, 2, m // 2 + 1, gen_names=("u", "v"),
                                  name=f"M{order}")


def metacyclic(p: int, m: int, q: int, n: int, lam: int) -> GroupTable:
    """<x, y : x^(p^m) = y^(q^n) = 1, x^y = x^lam> with ord(lam) = q mod p^m."""
    _check_metacyclic_params(p, m, q, n, lam)
    pm = p ** m
    t = pow(lam, -1, pm)  # y^-1 x y = x^lam under the left-action convention
    return split_extension_cyclic(pm, q ** n, t, gen_names=("x", "y"),
                                  name=f"Meta({p},{m},{q},{n},{lam})")


def _check_metacyclic_params(p, m, q, n, lam):
    if not (is_prime(p) and is_prime(q)) or p == q:
        raise ValidationError(f"metacyclic needs distinct primes, got p={p}, q={q}")
    if m < 1 or n < 1:
        raise ValidationError("metacyclic exponents must be >= 1")
    pm = p ** m
    if not 1 <= lam < pm:
        raise ValidationError(f"lambda={lam} out of range for modulus {pm}")
    try:
        ord_lam = multiplicative_order(lam, pm)
    except ValueError:
        raise ValidationError(f"lambda={lam} is not a unit mod {pm}") from None
    if ord_lam != q:
        raise ValidationError(
            f"lambda={lam} has multiplicative order {ord_lam} mod {pm}, expected {q}")


def k14_family(n: int) -> GroupTable:
    """<x, y : x^(2^n) = y^3 = 1, y^x = y^-1, (x^2)^y = x^2>, order 3*2^n."""
    if n < 1:
        raise ValidationError(f"family parameter must be >= 1, got {n}")
    return split_extension_cyclic(3, 2 ** n, 2, gen_names=("y", "x"),
                                  name=f"K14({n})")


_G16_RELATORS = {
    1: lambda u, v: (word_power(u, 4), word_power(v, 2),
                     commutator_word(commutator_word(v, u), u),
                     word_power(commutator_word(v, u), 2)),
    2: lambda u, v: (word_power(u, 4), word_power(v, 4),
                     inverse_word(v) + u + v + u),
    3: lambda u, v: (word_power(u, 8), word_power(v, 2),
                     inverse_word(v) + u + v + word_power(u, 3)),
    4: lambda u, v: (word_power(u, 8),
                     inverse_word(v) + u + v + u,
                     word_power(u, 4) + word_power(inverse_word(v), 2)),
}


def sixteen_group(i: int) -> GroupTable:
    """The four non-abelian order-16 groups used as forbidden-pattern hosts."""
    if i not in (1, 2, 3, 4):
        raise ValidationError(f"index must be 1..4, got {i}")
    pres = sixteen_group_presentation(i)
    g = group_from_presentation(pres, max_cosets=160, name=f"G{i}")
    if g.order != 16:
        raise ValidationError(f"presentation for G{i} closed at order {g.order}")
    return g


def sixteen_group_presentation(i: int) -> Presentation:
    u, v = (1,), (2,)
    return Presentation(2, _G16_RELATORS[i](u, v), names=("u", "v"))


def sym(n: int) -> GroupTable:
    if n < 1:
        raise ValidationError("symmetric group degree must be >= 1")
    if n == 1:
        g = cyclic(1)
        g.name = "S1"
        return g
    gens = ["(1 2)"]
    if n > 2:
        gens.append("(" + " ".join(str(i) for i in range(1, n + 1)) + ")")
    return group_from_permutations(gens, name=f"S{n}")


def alt(n: int) -> GroupTable:
    if n < 1:
        raise ValidationError("alternating group degree must be >= 1")
    if n <= 2:
        g = cyclic(1)
        g.name = f"A{n}"
        return g
    if n == 3:
        g = group_from_permutations(["(1 2 3)"], name="A3")
        return g
    if n % 2:
        long_cycle = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    else:
        long_cycle = "(" + " ".join(str(i) for i in range(2, n + 1)) + ")"
    return group_from_permutations(["(1 2 3)", long_cycle], name=f"A{n}")


def frobenius(p: int, q: int, r: int = 1) -> GroupTable:
    """Frobenius group E(p, r) ⋊ C_q with a fixed-point-free action.

    For r = 1 the action is multiplication by the smallest unit of order q;
    for r > 1 a matrix of order q acting freely is found by exhaustive
    search over GL(r, p), which is fine at desk scale.
    """
    if not is_prime(p) or q < 2 or r < 1:
        raise ValidationError(f"invalid Frobenius parameters ({p}, {q}, {r})")
    if (p ** r - 1) % q != 0:
        raise ValidationError(
            f"q={q} must divide p^r - 1 = {p ** r - 1} for a free action")
    name = f"Frob({p},{q})" if r == 1 else f"Frob({p},{q},{r})"
    if r == 1:
        lam = element_of_order(q, p)
        if lam is None:
            raise ValidationError(f"no unit of order {q} mod {p}")
        t = pow(lam, -1, p)
        return split_extension_cyclic(p, q, t, gen_names=("x", "y"), name=name)
    mat = _free_action_matrix(p, q, r)
    from .groups import semidirect_product
    kernel = elementary_abelian(p, r)
    comp = cyclic(q)
    powers = [_mat_identity(r)]
    for _ in range(q - 1):
        powers.append(_mat_mul(powers[-1], mat, p))
    action = [_mat_to_perm(mp, p, r) for mp in powers]
    return semidirect_product(kernel, comp, action, name=name)


def _mat_identity(r):
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def _mat_mul(a, b, p):
    r = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(r)) % p
                       for j in range(r)) for i in range(r))


def _mat_apply(mat, vec, p):
    return tuple(sum(row[j] * vec[j] for j in range(len(vec))) % p for row in mat)


def _vec_of_index(idx, p, r):
    digits = []
    for _ in range(r):
        digits.append(idx % p)
        idx //= p
    return tuple(reversed(digits))  # first direct-product factor is most significant


def _index_of_vec(vec, p):
    idx = 0
    for d in vec:
        idx = idx * p + d
    return idx


def _mat_to_perm(mat, p, r):
    n = p ** r
    return tuple(_index_of_vec(_mat_apply(mat, _vec_of_index(i, p, r), p), p)
                 for i in range(n))


def _free_action_matrix(p, q, r):
    ident = _mat_identity(r)
    nonzero = [_vec_of_index(i, p, r) for i in range(1, p ** r)]
    for code in range(p ** (r * r)):
        digits = []
        c = code
        for _ in range(r * r):
            digits.append(c % p)
            c //= p
        mat = tuple(tuple(digits[i * r + j] for j in range(r)) for i in range(r))
        powers = [mat]
        ok = True
        for _ in range(q - 1):
            if powers[-1] == ident:
                ok = False
                break
            powers.append(_mat_mul(powers[-1], mat, p))
        if not ok or powers[-1] != ident:
            continue
        if all(_mat_apply(mp, v, p) != v for mp in powers[:-1] for v in nonzero):
            return mat
    raise ValidationError(f"no free action of C{q} on E({p},{r}) found")


# ---------------------------------------------------------------------------
# registry


def catalog_group(family: str, *params) -> GroupTable:
    key = family.lower()
    if key in ("cyclic", "c"):
        return cyclic(*params)
    if key in ("elementaryabelian", "e"):
        return elementary_abelian(*params)
    if key in ("abelianoftype", "abelian"):
        return abelian_of_type(*params)
    if key in ("dihedral", "d"):
        return dihedral(*params)
    if key in ("generalizedquaternion", "q"):
        return generalized_quaternion(*params)
    if key in ("semidihedral", "sd"):
        return semidihedral(*params)
    if key in ("modular", "m"):
        return modular_maximal_cyclic(*params)
    if key in ("metacyclic", "meta"):
        return metacyclic(*params)
    if key in ("k14family", "k14"):
        return k14_family(*params)
    if key in ("sym", "s"):
        return sym(*params)
    if key in ("alt", "a"):
        return alt(*params)
    if key in ("frobenius", "frob"):
        return frobenius(*params)
    if key in ("g1", "g2", "g3", "g4") and not params:
        return sixteen_group(int(key[1]))
    raise ValidationError(f"unknown catalog family {family!r}")


def catalog_presentation(family: str, *params) -> Presentation | None:
    """Defining presentation for a family member, or None if we keep none."""
    key = family.lower()
    if key in ("cyclic", "c"):
        (n,) = params
        return Presentation(1, (word_power((1,), n),), names=("a",))
    if key in ("elementaryabelian", "e"):
        p, k = params
        return _abelian_presentation([p] * k)
    if key in ("abelianoftype", "abelian"):
        return _abelian_presentation(list(params))
    if key in ("dihedral", "d"):
        (order,) = params
        m = order // 2
        return Presentation(2, (word_power((1,), m), word_power((2,), 2),
                                (-2, 1, 2, 1)), names=("r", "s"))
    if key in ("generalizedquaternion", "q"):
        (order,) = params
        m = order // 2
        return Presentation(2, (word_power((1,), m),
                                word_power((1,), m // 2) + (-2, -2),
                                (-2, 1, 2, 1)), names=("a", "b"))
    if key in ("semidihedral", "sd"):
        (order,) = params
        m = order // 2
        return Presentation(2, (word_power((1,), m), word_power((2,), 2),
                                (-2, 1, 2) + word_power((-1,), m // 2 - 1)),
                            names=("u", "v"))
    if key in ("modular", "m"):
        (order,) = params
        m = order // 2
        return Presentation(2, (word_power((1,), m), word_power((2,), 2),
                                (-2, 1, 2) + word_power((-1,), m // 2 + 1)),
                            names=("u", "v"))
    if key in ("metacyclic", "meta"):
        p, m, q, n, lam = params
        _check_metacyclic_params(p, m, q, n, lam)
        return Presentation(2, (word_power((1,), p ** m),
                                word_power((2,), q ** n),
                                (-2, 1, 2) + word_power((-1,), lam)),
                            names=("x", "y"))
    if key in ("k14family", "k14"):
        (n,) = params
        return Presentation(2, (word_power((1,), 2 ** n), word_power((2,), 3),
                                (-1, 2, 1, 2),
                                (-2, 1, 1, 2, -1, -1)),
                            names=("x", "y"))
    if key in ("frobenius", "frob"):
        if len(params) == 3 and params[2] != 1:
            return None
        p, q = params[0], params[1]
        lam = element_of_order(q, p)
        if lam is None:
            raise ValidationError(f"no unit of order {q} mod {p}")
        return Presentation(2, (word_power((1,), p), word_power((2,), q),
                                (-2, 1, 2) + word_power((-1,), lam)),
                            names=("x", "y"))
    if key in ("g1", "g2", "g3", "g4") and not params:
        return sixteen_group_presentation(int(key[1]))
    return None


def _abelian_presentation(divisors):
    k = len(divisors)
    rels = [word_power((i + 1,), d) for i, d in enumerate(divisors)]
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            rels.append(commutator_word((i,), (j,)))
    return Presentation(k, tuple(rels))
