import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tower_limits.arith import alpha
from tower_limits.dynamics import analyze_map, iterate_literal, iterate_reduced, orbit_shape, orbit_value
from tower_limits.errors import BudgetExceeded
from tower_limits.polyparse import Polynomial, parse_poly

from conftest import polynomial_corpus, polynomials


def naive_shape(f, a, m):
    """Tail and cycle of the orbit of a mod m by recording first visits."""
    seen = {}
    x, i = a % m, 0
    while x not in seen:
        seen[x] = i
        x = f(x) % m
        i += 1
    return seen[x], i - seen[x]


def test_analyze_map_examples(quadratic):
    g7 = analyze_map(quadratic, 7)
    assert g7.cycle_inventory() == [[2], [5]]
    assert (g7.period, g7.preperiod) == (1, 3)
    assert g7.shape(0).tail == 3 and g7.shape(0).entry == 5

    g5 = analyze_map(quadratic, 5)
    assert g5.cycle_inventory() == [[0, 3]]
    assert (g5.period, g5.preperiod) == (2, 2)
    assert g5.shape(2).tail == 2

    ident = analyze_map(parse_poly("x"), 12)
    assert (ident.period, ident.preperiod) == (0 + 1, 0)
    assert all(ident.shape(a).cycle == 1 for a in range(12))


def test_analyze_map_ceiling(quadratic):
    with pytest.raises(BudgetExceeded):
        analyze_map(quadratic, 101, ceiling=100)


def test_degenerate_modulus(quadratic):
    g = analyze_map(quadratic, 1)
    assert (g.period, g.preperiod) == (1, 0)
    s = orbit_shape(quadratic, 17, 1)
    assert (s.tail, s.cycle, s.entry) == (0, 1, 0)


def test_orbit_shape_examples(quadratic):
    s = orbit_shape(quadratic, 0, 10)
    assert (s.tail, s.cycle, s.entry) == (1, 2, 3)
    s = orbit_shape(quadratic, 0, 25)
    assert (s.tail, s.cycle) == (0, 8)
    assert list(s.prefix) == [0, 3, 15, 18, 20, 23, 5, 8]
    s = orbit_shape(parse_poly("x"), 9, 100)
    assert (s.tail, s.cycle) == (0, 1)


def test_orbit_shape_budget(quadratic):
    with pytest.raises(BudgetExceeded):
        orbit_shape(quadratic, 0, 5**9, max_steps=1000)


def test_orbit_shape_without_cache_matches(quadratic):
    cached = orbit_shape(quadratic, 0, 5**6)
    uncached = orbit_shape(quadratic, 0, 5**6, cache_bound=10)
    assert (cached.tail, cached.cycle, cached.entry) == (uncached.tail, uncached.cycle, uncached.entry)
    assert uncached.prefix is None
    for e in (0, 7, 12345, 10**30 + 3):
        assert orbit_value(quadratic, cached, e) == orbit_value(quadratic, uncached, e)


def test_iterate_reduced_examples(quadratic):
    s = orbit_shape(quadratic, 0, 10)
    assert iterate_reduced(quadratic, 0, 10, s, 3, 2, floor=3) == 3
    seven = parse_poly("7x")
    s = orbit_shape(seven, 1, 10)
    assert iterate_reduced(seven, 1, 10, s, 3, s.cycle, floor=3) == 3
    # period 1, floor 0: the earliest index on the cycle
    f = parse_poly("x^2+2")
    s = orbit_shape(f, 0, 8)
    assert iterate_reduced(f, 0, 8, s, 0, 1) == orbit_value(f, s, s.tail)


def test_iterate_reduced_rejects_bad_period(quadratic):
    s = orbit_shape(quadratic, 0, 25)
    with pytest.raises(ValueError):
        iterate_reduced(quadratic, 0, 25, s, 1, 12)


@given(polynomials(), st.integers(1, 300), st.data())
def test_orbit_shape_matches_enumeration(f, m, data):
    g = analyze_map(f, m)
    for a in data.draw(st.lists(st.integers(0, m - 1), min_size=1, max_size=10)):
        s = orbit_shape(f, a, m)
        assert (s.tail, s.cycle, s.entry) == (int(g.tails[a]), int(g.cycles[a]), int(g.entries[a]))


def test_orbit_shape_matches_enumeration_exhaustive():
    for f in polynomial_corpus(15):
        for m in (1, 2, 12, 97, 128, 243, 300):
            g = analyze_map(f, m)
            for a in range(m):
                s = orbit_shape(f, a, m)
                assert (s.tail, s.cycle) == (int(g.tails[a]), int(g.cycles[a])) == naive_shape(f, a, m)


@given(polynomials(), st.integers(1, 300))
def test_lemma_v_bound(f, m):
    g = analyze_map(f, m)
    assert g.preperiod + alpha(g.period) <= m


@given(polynomials(), st.integers(1, 200), st.integers(0, 199))
def test_period_characterisation(f, m, a):
    """f^K' = f^(K'+L') on all points iff K <= K' and L | L'."""
    g = analyze_map(f, m)
    K, L = g.preperiod, g.period

    def same(k, l):
        return all(iterate_literal(f, x, k, m) == iterate_literal(f, x, k + l, m) for x in range(m))

    assert same(K, L)
    if K > 0:
        assert not same(K - 1, L)
    for d in range(1, L):
        if L % d == 0:
            assert not same(K, d)


@given(polynomials(), st.integers(1, 200), st.data())
def test_gcd_of_return_pairs(f, m, data):
    a = data.draw(st.integers(0, m - 1))
    s = analyze_map(f, m).shape(a)
    k1 = data.draw(st.integers(s.tail, s.tail + 5))
    k2 = data.draw(st.integers(s.tail, s.tail + 5))
    l1 = s.cycle * data.draw(st.integers(1, 6))
    l2 = s.cycle * data.draw(st.integers(1, 6))
    for k, l in ((k1, l1), (k2, l2)):
        assert iterate_literal(f, a, k, m) == iterate_literal(f, a, k + l, m)
    k, l = min(k1, k2), math.gcd(l1, l2)
    assert iterate_literal(f, a, k, m) == iterate_literal(f, a, k + l, m)


@given(polynomials(), st.integers(1, 500), st.integers(0, 10**5), st.integers(0, 50))
def test_iterate_reduced_matches_literal(f, m, e, floor_pad):
    a = 1
    s = orbit_shape(f, a, m)
    floor = min(e, floor_pad)
    period = s.cycle * 3
    got = iterate_reduced(f, a, m, s, e, period, floor=floor)
    lo = max(floor, s.tail)
    expected_e = lo + (e - lo) % period
    assert got == iterate_literal(f, a, expected_e, m)
    assert orbit_value(f, s, e) == iterate_literal(f, a, e, m)


def test_iterate_literal_cap(quadratic):
    with pytest.raises(BudgetExceeded):
        iterate_literal(quadratic, 0, 11, 10, cap=10)
