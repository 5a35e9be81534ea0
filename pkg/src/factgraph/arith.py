"""Small integer-arithmetic helpers (trial division scale)."""

from __future__ import annotations


def factor_multiset(n: int) -> tuple[int, ...]:
    """Prime factors of ``n`` in ascending order, with multiplicity."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factor_multiset(n) == (n,)


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(set(factor_multiset(n))) == 1


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in the unit group mod ``n``; raises if gcd(a, n) != 1."""
    a %= n
    if n <= 0 or _gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def element_of_order(q: int, n: int) -> int | None:
    """Smallest unit of multiplicative order exactly ``q`` mod ``n``, or None."""
    for a in range(2, n):
        if _gcd(a, n) == 1 and multiplicative_order(a, n) == q:
            return a
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
