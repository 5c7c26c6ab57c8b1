"""Integer helpers: primality, factorization, lcm and the largest prime-power factor."""

from __future__ import annotations

import math
from functools import lru_cache, reduce
from typing import Iterable

from .config import DEFAULT

Factorization = list[tuple[int, int]]  # (prime, exponent), ascending by prime

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _wheel():
    yield from (2, 3, 5)
    gaps = (4, 2, 4, 2, 4, 6, 2, 6)
    d = 7
    while True:
        for g in gaps:
            yield d
            d += g


@lru_cache(maxsize=4096)
def _factor_tuple(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    for d in _wheel():
        if d * d > n:
            break
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
            if n > 1 and is_prime(n):
                break
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int, ceiling: int | None = DEFAULT.factor_ceiling) -> Factorization:
    """Prime factorization by wheel trial division, e.g. 84 -> [(2, 2), (3, 1), (7, 1)].

    ``ceiling=None`` lifts the size limit; use it only for numbers known to be
    smooth (powers of a small base, cycle lengths).
    """
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    if ceiling is not None and n > ceiling:
        raise ValueError(f"{n} exceeds the trial-division ceiling {ceiling}")
    return list(_factor_tuple(n))


def alpha(n: int) -> int:
    """Largest prime power dividing n; alpha(1) == 1."""
    return max((p**e for p, e in factorize(n, None)), default=1)


def lcm_all(values: Iterable[int]) -> int:
    values = list(values)
    if not values:
        raise ValueError("lcm of an empty list")
    return reduce(math.lcm, values)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine x = r1 (mod m1) and x = r2 (mod m2) for coprime moduli."""
    inv = pow(m1, -1, m2) if m2 > 1 else 0
    x = r1 + m1 * ((r2 - r1) * inv % m2)
    return x % (m1 * m2), m1 * m2


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def lcm_upto(p: int) -> int:
    """lcm(1, 2, ..., p)."""
    return lcm_all(range(1, p + 1))
