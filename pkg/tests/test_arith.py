import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tower_limits.arith import alpha, crt_pair, factorize, is_prime, lcm_all, lcm_upto, primes_up_to


def naive_factor(n):
    out, d = [], 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def test_factorize_examples():
    assert factorize(84) == [(2, 2), (3, 1), (7, 1)]
    assert factorize(1) == []
    assert factorize(10) == [(2, 1), (5, 1)]


def test_factorize_errors():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**64 + 1)


def test_factorize_large_prime_factor():
    p = 2**61 - 1
    assert factorize(6 * p, None) == [(2, 1), (3, 1), (p, 1)]


@given(st.integers(1, 10**7))
def test_factorize_matches_naive(n):
    fac = factorize(n)
    assert fac == naive_factor(n)
    assert all(is_prime(p) for p, _ in fac)


def test_is_prime_against_sieve():
    sieve = set(primes_up_to(10**4))
    assert all(is_prime(n) == (n in sieve) for n in range(10**4 + 1))
    assert is_prime(2**61 - 1) and not is_prime(3215031751)


def test_alpha_examples():
    assert alpha(12) == 4
    assert alpha(1) == 1
    assert alpha(math.lcm(12, 18)) == 9 == max(alpha(12), alpha(18))


def test_lcm_examples():
    assert lcm_all([2, 1]) == 2
    assert lcm_all([4, 6]) == 12
    assert lcm_all(range(1, 6)) == 60 == lcm_upto(5)
    with pytest.raises(ValueError):
        lcm_all([])


def brute_alpha(n):
    return max((q for q in range(1, n + 1) if n % q == 0 and len(naive_factor(q)) <= 1), default=1)


@given(st.integers(1, 3000))
def test_alpha_matches_brute_force(n):
    assert alpha(n) == brute_alpha(n)


@given(st.integers(1, 10**5), st.integers(1, 10**5))
def test_alpha_submultiplicative(m, n):
    assert alpha(m * n) <= alpha(m) * alpha(n)


@given(st.lists(st.integers(1, 10**4), min_size=1, max_size=6))
def test_alpha_of_lcm_is_max(values):
    assert alpha(lcm_all(values)) == max(alpha(v) for v in values)


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_crt_pair(x, y):
    m1, m2 = 1024, 9765625
    r, m = crt_pair(x % m1, m1, y % m2, m2)
    assert m == m1 * m2 and r % m1 == x % m1 and r % m2 == y % m2
