"""Tower-stability, valid and f-valid bases, and the C_tow partial product."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .arith import factorize, is_prime, primes_up_to
from .config import DEFAULT, Config
from .errors import NotTowerStable
from .periods import lambda_exact
from .polyparse import Polynomial

STABLE_CERTIFIED = "stable-certified"
STABLE_UP_TO_BOUND = "stable-up-to-bound"
UNSTABLE = "unstable"


@lru_cache(maxsize=8192)
def is_p_cycle(f: Polynomial, p: int) -> bool:
    """True iff f mod p permutes Z/pZ as one cycle of length p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    step = f.step_function(p)
    seen = bytearray(p)
    x = 0
    for _ in range(p):
        if seen[x]:
            return False
        seen[x] = 1
        x = step(x)
    return x == 0


@dataclass(frozen=True)
class StabilityReport:
    polynomial: str
    prime_bound: int
    prime_verdicts: tuple[tuple[int, bool], ...]
    collision: tuple[int, int] | None
    fixed_point: int | None
    verdict: str
    witness: int | None = None
    residual_primes: tuple[int, ...] = field(default=())

    @property
    def stable(self) -> bool:
        return self.verdict != UNSTABLE

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["prime_verdicts"] = tuple(tuple(v) for v in data["prime_verdicts"])
        if data.get("collision") is not None:
            data["collision"] = tuple(data["collision"])
        data["residual_primes"] = tuple(data.get("residual_primes", ()))
        return cls(**data)


def _find_collision(f: Polynomial, bound: int) -> tuple[int, int] | None:
    """Integers c != c' with f(c) == f(c'), preferring the closest pair."""
    if f.degree == 0:
        return (0, 1)
    best = None
    if f.degree == 2:
        # x + y = -c1/c2 is the only way two quadratic values can agree.
        c0, c1, c2 = f.coeffs
        if c1 % c2 == 0 and c1 != 0:
            best = (0, -c1 // c2)
    first_seen: dict[int, int] = {}
    for c in sorted(range(-bound, bound + 1), key=lambda v: (abs(v), v)):
        v = f(c)
        if v in first_seen:
            pair = (first_seen[v], c)
            if best is None or abs(pair[0] - pair[1]) < abs(best[0] - best[1]):
                best = pair
        else:
            first_seen[v] = c
    return best


def _find_fixed_point(f: Polynomial, bound: int) -> int | None:
    for c in sorted(range(-bound, bound + 1), key=lambda v: (abs(v), v)):
        if f(c) == c:
            return c
    return None


def tower_stability_report(f: Polynomial, prime_bound: int = 100, collision_bound: int = 1000) -> StabilityReport:
    """Decide tower-stability with integer certificates where possible.

    A fixed point f(c) = c rules out a p-cycle at every prime.  A collision
    f(c) = f(c') makes f mod p non-injective for every p not dividing c - c',
    leaving only those finitely many primes to test.  Without a certificate
    only primes up to ``prime_bound`` are swept.
    """
    fixed = _find_fixed_point(f, collision_bound)
    collision = None if fixed is not None else _find_collision(f, collision_bound)
    residual: tuple[int, ...] = ()
    if collision is not None:
        residual = tuple(p for p, _ in factorize(abs(collision[0] - collision[1]), None))
    swept = primes_up_to(prime_bound)
    to_check = sorted(set(swept) | set(residual))
    verdicts = tuple((p, is_p_cycle(f, p)) for p in to_check)
    bad = [p for p, cyc in verdicts if cyc]
    if bad:
        verdict, witness = UNSTABLE, bad[0]
    elif fixed is not None or collision is not None:
        verdict, witness = STABLE_CERTIFIED, None
    else:
        verdict, witness = STABLE_UP_TO_BOUND, None
    return StabilityReport(str(f), prime_bound, verdicts, collision, fixed, verdict, witness, residual)


def is_valid_base(b: int) -> bool:
    """Every prime q dividing p - 1, for a prime p dividing b, also divides b."""
    if b < 1:
        raise ValueError("base must be positive")
    primes = {p for p, _ in factorize(b)}
    return all(q in primes for p in primes for q, _ in factorize(p - 1))


def is_f_valid_base(f: Polynomial, b: int, config: Config = DEFAULT) -> bool:
    """Square-free, valid, and closed under the primes of lambda_f(p) for p | b."""
    if b < 1:
        raise ValueError("base must be positive")
    fac = factorize(b)
    primes = {p for p, _ in fac}
    for p in sorted(primes):
        if is_p_cycle(f, p):
            raise NotTowerStable(p)
    if any(e > 1 for _, e in fac) or not is_valid_base(b):
        return False
    for p in primes:
        lam = lambda_exact(f, p, config).period
        if any(q not in primes for q, _ in factorize(lam)):
            return False
    return True


def ctow_factor(p: int) -> float:
    """(p-1)!/p^p as a running product of factors j/p, each at most 1."""
    acc = 1.0 / p
    for j in range(1, p):
        acc *= j / p
    return acc


def ctow_partial(prime_bound: int) -> float:
    """Product over primes p <= prime_bound of 1 - (p-1)!/p^p."""
    if prime_bound < 2:
        raise ValueError("prime bound must be at least 2")
    out = 1.0
    for p in primes_up_to(prime_bound):
        out *= 1.0 - ctow_factor(p)
    return out
