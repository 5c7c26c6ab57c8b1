"""Period maps of a polynomial: exact values, prime-power lifts and CRT combination.

``lambda_f(m)`` is the period of the whole reduction f mod m (lcm of all cycle
lengths).  The start-point variants (tail and cycle of one orbit) are what the
limit engine needs; certificates say which of the two they describe.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache

from .arith import factorize, is_prime, lcm_all, lcm_upto
from .config import DEFAULT, Config
from .dynamics import analyze_map, orbit_shape
from .errors import BudgetExceeded, NotTowerStable
from .polyparse import Polynomial, derivative

ENUMERATION = "enumeration"
LIFT = "prime-power-lift"
CRT_COMBINE = "crt-combine"
LINEAR = "linear-closed-form"
LCM_CHAIN = "lcm-chain"


@dataclass(frozen=True)
class PeriodCertificate:
    """``period`` equals (exact) or is a multiple of the period modulo ``modulus``.

    ``tail_bound`` is at least the preperiod, so f^T(x) = f^(T+period)(x) mod m
    for every T >= tail_bound.  ``start`` is None for the global map, or the
    start point whose orbit alone is described.
    """

    modulus: int
    period: int
    exact: bool
    tail_bound: int
    provenance: str
    start: int | None = None

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


@dataclass(frozen=True)
class Multiplier:
    prime: int
    value: int
    start: int
    tail: int
    cycle: int


def _enumerable(m: int, config: Config) -> bool:
    return m <= config.enum_ceiling


@lru_cache(maxsize=4096)
def _lambda_exact_cached(f: Polynomial, m: int, ceiling: int) -> tuple[int, int]:
    g = analyze_map(f, m, ceiling)
    return g.period, g.preperiod


def lambda_exact(f: Polynomial, m: int, config: Config = DEFAULT) -> PeriodCertificate:
    """Exact period and preperiod of f mod m by enumerating the functional graph."""
    period, pre = _lambda_exact_cached(f, m, config.enum_ceiling)
    return PeriodCertificate(m, period, True, pre, ENUMERATION)


def multiplier(f: Polynomial, a: int, p: int, config: Config = DEFAULT) -> Multiplier:
    """Product of f' along the mod-p cycle reached from a, reduced mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    shape = orbit_shape(f, a, p, config.max_steps, config.cache_bound)
    df = derivative(f).step_function(p)
    step = f.step_function(p)
    x = shape.entry
    mu = 1
    for _ in range(shape.cycle):
        mu = mu * df(x) % p
        x = step(x)
    return Multiplier(p, mu, a, shape.tail, shape.cycle)


def lift_prime_power(f: Polynomial, a: int, p: int, k: int, config: Config = DEFAULT) -> PeriodCertificate:
    """Tail and cycle bounds for the orbit of a mod p^k from the data mod p.

    Vanishing multiplier: the cycle length stays that mod p and the tail grows
    by at most one cycle per level.  Otherwise the tail is unchanged and the
    cycle length divides cycle(p) * (p - 1) * p^(k - 1).
    """
    if k < 1:
        raise ValueError("exponent must be positive")
    mult = multiplier(f, a, p, config)
    start = a % p**k
    if k == 1:
        return PeriodCertificate(p, mult.cycle, True, mult.tail, LIFT, start)
    if mult.value == 0:
        return PeriodCertificate(p**k, mult.cycle, True, mult.tail + (k - 1) * mult.cycle, LIFT, start)
    return PeriodCertificate(p**k, mult.cycle * (p - 1) * p ** (k - 1), False, mult.tail, LIFT, start)


def _lcm_chain_certificate(f: Polynomial, p: int, k: int, config: Config) -> PeriodCertificate:
    # Largest enumerable power p^j, then one lcm(1..p) factor per extra level;
    # each level adds at most p periods of the previous level to the tail.
    j = 1
    while p ** (j + 1) <= config.enum_ceiling and j + 1 <= k:
        j += 1
    if p**j > config.enum_ceiling:
        raise BudgetExceeded(f"prime {p} exceeds the enumeration ceiling {config.enum_ceiling}", required=p)
    base = lambda_exact(f, p**j, config)
    period, tail = base.period, base.tail_bound
    step = lcm_upto(p)
    for _ in range(k - j):
        tail += period * p
        period *= step
    return PeriodCertificate(p**k, period, False, tail, LCM_CHAIN)


def prime_power_certificate(
    f: Polynomial, p: int, k: int, start: int | None = None, config: Config = DEFAULT
) -> PeriodCertificate:
    q = p**k
    if start is not None:
        if _enumerable(q, config):
            shape = orbit_shape(f, start, q, config.max_steps, config.cache_bound)
            return PeriodCertificate(q, shape.cycle, True, shape.tail, ENUMERATION, shape.start)
        return lift_prime_power(f, start, p, k, config)
    if _enumerable(q, config):
        return lambda_exact(f, q, config)
    return _lcm_chain_certificate(f, p, k, config)


def combine(certs: list[PeriodCertificate], modulus: int, start: int | None = None) -> PeriodCertificate:
    """lcm of periods, max of tails: the certificate for the product modulus."""
    if not certs:
        return PeriodCertificate(1, 1, True, 0, CRT_COMBINE, None if start is None else 0)
    if len(certs) == 1:
        return certs[0]
    return PeriodCertificate(
        modulus,
        lcm_all(c.period for c in certs),
        all(c.exact for c in certs),
        max(c.tail_bound for c in certs),
        CRT_COMBINE,
        None if start is None else start % modulus,
    )


def lambda_multiple(
    f: Polynomial, m: int, start: int | None = None, config: Config = DEFAULT
) -> PeriodCertificate:
    """A certified multiple of the period mod m (exact when every part is).

    Each prime power of m is handled separately and the parts are combined
    with lcm.  With ``start`` the certificate describes that orbit only.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return PeriodCertificate(1, 1, True, 0, ENUMERATION, None if start is None else 0)
    parts = [prime_power_certificate(f, p, e, start, config) for p, e in factorize(m, None)]
    return combine(parts, m, start)


def lambda_chain(f: Polynomial, m: int, max_depth: int = 64, config: Config = DEFAULT) -> list[PeriodCertificate]:
    """m, lambda(m), lambda(lambda(m)), ... down to 1, one certificate per link.

    Raises NotTowerStable at the first prime divisor whose reduction is a
    full cycle, since the chain cannot reach 1 past such a prime.
    """
    from .stability import is_p_cycle

    chain = []
    while True:
        for p, _ in factorize(m, None):
            if is_p_cycle(f, p):
                raise NotTowerStable(p)
        cert = lambda_multiple(f, m, config=config)
        chain.append(cert)
        if m == 1:
            return chain
        if len(chain) >= max_depth:
            raise BudgetExceeded(f"period chain did not reach 1 within {max_depth} links", required=None)
        m = cert.period


def linear_cycle_bounds(b: int, c: int, s: int, p: int) -> tuple[int, int]:
    """(tail bound, period divisor) for the orbit of s under x -> b x + c mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if b % p == 0:
        return 1, 1
    if b % p == 1:
        return 0, p
    shape = orbit_shape(Polynomial([c, b]), s, p)
    return shape.tail, shape.cycle


def _affine_power(b: int, c: int, e: int, m: int) -> tuple[int, int]:
    # (A, B) stands for x -> A x + B; square-and-multiply on composition.
    ra, rb = 1 % m, 0
    pa, pb = b % m, c % m
    while e:
        if e & 1:
            ra, rb = pa * ra % m, (pa * rb + pb) % m
        pa, pb = pa * pa % m, (pa * pb + pb) % m
        e >>= 1
    return ra, rb


def closed_form_linear_iterate(bcoef: int, c: int, x0: int, e: int, m: int) -> int:
    """f^e(x0) mod m for f(x) = bcoef * x + c in O(log e) multiplications."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    A, B = _affine_power(bcoef, c, e, m)
    return (A * x0 + B) % m


def linear_iterate(f: Polynomial, x0: int, e: int, m: int) -> int:
    if f.degree > 1:
        raise ValueError("closed-form iteration needs a polynomial of degree at most 1")
    c, b = (f.coeffs + (0,))[:2]
    return closed_form_linear_iterate(b, c, x0, e, m)


def certificate_holds(f: Polynomial, cert: PeriodCertificate, xs) -> bool:
    """Check f^T(x) = f^(T+period)(x) mod m on the given points."""
    m = cert.modulus
    step = f.step_function(m)
    for x in xs:
        y = x % m
        for _ in range(cert.tail_bound):
            y = step(y)
        if f.degree <= 1:
            z = linear_iterate(f, y, cert.period, m)
        else:
            z = y
            for _ in range(cert.period):
                z = step(z)
        if z != y:
            return False
    return True


__all__ = [
    "PeriodCertificate",
    "Multiplier",
    "lambda_exact",
    "multiplier",
    "lift_prime_power",
    "prime_power_certificate",
    "lambda_multiple",
    "lambda_chain",
    "linear_cycle_bounds",
    "closed_form_linear_iterate",
    "linear_iterate",
    "certificate_holds",
    "combine",
]
