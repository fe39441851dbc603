"""Small integer helpers: factorization, divisors, Moebius, Kronecker symbol."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

FACTOR_BOUND = 10**7


@lru_cache(maxsize=4096)
def factorize(n: int, bound: int = FACTOR_BOUND) -> tuple[tuple[int, int], ...]:
    """Prime factorization of |n| by trial division, as ((p, e), ...) ascending."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = []
    p = 2
    while p * p <= n:
        if p > bound:
            raise ValueError(f"trial division bound {bound} exceeded for {n}")
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorize(n):
        out *= (p - 1) * p ** (e - 1)
    return out


def moebius(n: int) -> int:
    fs = factorize(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(n))


def lcm(*args: int) -> int:
    out = 1
    for a in args:
        out = out * a // gcd(out, a)
    return out


def vp(p: int, n: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 and a % 8 in (3, 5):
        result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1:
        return True
    if D == 0:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def square_part(n: int) -> tuple[int, int]:
    """Write |n| = c * g^2 with c squarefree; returns (c, g)."""
    c, g = 1, 1
    for p, e in factorize(n):
        g *= p ** (e // 2)
        c *= p ** (e % 2)
    return c, g


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
