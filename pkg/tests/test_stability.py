import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tower_limits.arith import alpha, factorize, primes_up_to
from tower_limits.dynamics import analyze_map
from tower_limits.errors import NotTowerStable
from tower_limits.periods import lambda_exact
from tower_limits.polyparse import parse_poly
from tower_limits.stability import (
    STABLE_CERTIFIED,
    STABLE_UP_TO_BOUND,
    UNSTABLE,
    StabilityReport,
    _find_collision,
    ctow_factor,
    ctow_partial,
    is_f_valid_base,
    is_p_cycle,
    is_valid_base,
    tower_stability_report,
)

from conftest import polynomials


def test_is_p_cycle_examples(quadratic, seven_x):
    assert is_p_cycle(parse_poly("x+1"), 5)
    assert not is_p_cycle(quadratic, 5)
    assert not is_p_cycle(seven_x, 3)
    with pytest.raises(ValueError):
        is_p_cycle(quadratic, 6)


def test_report_examples(quadratic, seven_x):
    rep = tower_stability_report(quadratic)
    assert rep.verdict == STABLE_CERTIFIED
    assert set(rep.collision) == {0, -1} and rep.residual_primes == ()

    rep = tower_stability_report(parse_poly("x+1"))
    assert (rep.verdict, rep.witness) == (UNSTABLE, 2)
    assert dict(rep.prime_verdicts)[2] is True

    rep = tower_stability_report(seven_x)
    assert (rep.verdict, rep.fixed_point) == (STABLE_CERTIFIED, 0)


def test_report_residual_primes_are_checked():
    # f(0) = f(6) = 1 for x^2 - 6x + 1: primes 2 and 3 are left to test.
    rep = tower_stability_report(parse_poly("x^2-6x+1"), prime_bound=10, collision_bound=3)
    assert rep.collision is not None
    diff = abs(rep.collision[0] - rep.collision[1])
    assert {p for p, _ in rep.prime_verdicts} >= {p for p, _ in factorize(diff)}


def test_report_without_certificate_is_bounded():
    # x^3 + 2 has no small integer collision or fixed point.
    rep = tower_stability_report(parse_poly("x^3+x+2"), prime_bound=30, collision_bound=50)
    if rep.collision is None and rep.fixed_point is None:
        assert rep.verdict in (STABLE_UP_TO_BOUND, UNSTABLE)


def test_report_json_round_trip(quadratic):
    rep = tower_stability_report(quadratic, prime_bound=20)
    assert StabilityReport.from_dict(rep.to_dict()) == rep


def test_valid_base_examples():
    assert is_valid_base(10)
    assert not is_valid_base(5)
    assert is_valid_base(2)
    assert is_valid_base(1)
    assert not is_valid_base(7 * 2)  # 3 divides 6
    assert is_valid_base(42)


def brute_valid(b):
    ps = [p for p in range(2, b + 1) if b % p == 0 and all(p % d for d in range(2, p))]
    return all(b % q == 0 for p in ps for q in range(2, p) if (p - 1) % q == 0 and all(q % d for d in range(2, q)))


@given(st.integers(1, 5000))
def test_valid_base_brute_force(b):
    assert is_valid_base(b) == brute_valid(b)


def test_f_valid_examples(quadratic):
    assert is_f_valid_base(quadratic, 10)
    assert not is_f_valid_base(quadratic, 20)
    assert not is_f_valid_base(quadratic, 5)
    with pytest.raises(NotTowerStable):
        is_f_valid_base(parse_poly("x+1"), 10)


def four_verdicts(f, p):
    lam = lambda_exact(f, p).period
    g = analyze_map(f, p)
    return (
        lam != p,
        not is_p_cycle(f, p),
        int(g.cycles.max()) < p,
        alpha(lam) < p,
    )


@given(polynomials(), st.sampled_from(primes_up_to(50)))
def test_four_criteria_agree(f, p):
    verdicts = four_verdicts(f, p)
    assert len(set(verdicts)) == 1


def brute_injective(f, p):
    return len({f(x) % p for x in range(p)}) == p


def test_collision_soundness():
    rng = random.Random(3)
    primes = primes_up_to(2000)
    for text in ("x^2+x+3", "x^2-6x+1", "x^3-x+5", "2x^2+4x+1", "x^4+x^2+1"):
        f = parse_poly(text)
        pair = _find_collision(f, 50)
        assert pair is not None and pair[0] != pair[1]
        diff = pair[0] - pair[1]
        assert f(pair[0]) == f(pair[1])
        sample = rng.sample([p for p in primes if diff % p], 20)
        assert not any(brute_injective(f, p) for p in sample)


def test_ctow_examples():
    assert ctow_partial(2) == pytest.approx(0.75)
    assert ctow_partial(3) == pytest.approx(0.75 * (1 - 2 / 27))
    assert abs(ctow_partial(200) - 0.688) <= 5e-4
    with pytest.raises(ValueError):
        ctow_partial(1)


def test_ctow_monotone_and_tail():
    values = [ctow_partial(p) for p in range(2, 300)]
    assert all(a >= b for a, b in zip(values, values[1:]))
    # Stirling: (p-1)!/p^p <= e * p^(-1/2) * e^(-p)
    assert all(ctow_factor(p) <= math.e * p**-0.5 * math.exp(-p) for p in primes_up_to(300))


def test_ctow_factor_matches_factorial():
    from math import factorial

    for p in primes_up_to(60):
        assert ctow_factor(p) == pytest.approx(factorial(p - 1) / p**p, rel=1e-12)
