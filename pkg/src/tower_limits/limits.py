"""Profinite limits of tower sequences y_0 = seed, y_(k+1) = f^(y_k)(a).

For a tower-stable f the sequence stabilises modulo every m, to a value t
that does not depend on the seed.  Modulo m, f^e(a) depends only on
whether e clears the orbit's tail and on e modulo the orbit's cycle length,
so t mod m is computed from t mod (cycle length) recursively; the cycle
lengths shrink until they reach 1.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .arith import crt_pair, factorize, lcm_all
from .config import DEFAULT, Config
from .dynamics import OrbitShape, iterate_literal, orbit_shape, orbit_value
from .errors import BudgetExceeded, Inconclusive, NotTowerStable, PreperiodicStart
from .periods import lift_prime_power, linear_iterate
from .polyparse import Polynomial, render
from .stability import is_f_valid_base, is_p_cycle

LITERAL = "literal"
REDUCED = "reduced"


@dataclass(frozen=True)
class PreperiodicWitness:
    start: int
    tail: int
    cycle: int
    value: int


@dataclass(frozen=True)
class TowerTrace:
    seed: int
    modulus: int
    values: tuple[int, ...]
    stabilization_index: int | None

    @property
    def limit(self) -> int | None:
        return None if self.stabilization_index is None else self.values[-1]

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["values"] = tuple(data["values"])
        return cls(**data)


@dataclass(frozen=True)
class DigitStream:
    """Base-b digits of the limit, least significant first.

    ``partial_sums[k-1]`` is the limit mod b^k; ``solutions[k-1]`` is the
    positive integer offered as a solution of f^x(a) = x (mod b^k), which
    differs from the partial sum only when that is 0 or fails the check.
    ``verified[k-1]`` is None when the check was not run within budget.
    """

    polynomial: str
    start: int
    base: int
    digits: tuple[int, ...]
    partial_sums: tuple[int, ...]
    solutions: tuple[int, ...]
    verified: tuple[bool | None, ...]
    f_valid: bool | None = None
    warnings: tuple[str, ...] = field(default=())

    def window(self) -> str:
        """Human form: ellipsis, then the computed digits most significant first."""
        if self.base > 10:
            return "..." + ":".join(str(d) for d in reversed(self.digits))
        return "..." + "".join(str(d) for d in reversed(self.digits))

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        for key in ("digits", "partial_sums", "solutions", "verified", "warnings"):
            data[key] = tuple(data.get(key, ()))
        return cls(**data)


def _escape_radius(f: Polynomial) -> tuple[int, int] | None:
    """(num, den) such that |x| * den > num (and |x| > 1) forces |f(x)| > |x|.

    None when no such radius exists (degree 0, or degree 1 with |slope| < 2).
    """
    d = f.degree
    if d >= 2:
        return sum(abs(c) for c in f.coeffs[:-1]) + 1, abs(f.leading)
    if d == 1 and abs(f.leading) >= 2:
        return abs(f.coeffs[0]), 1
    return None


def _escaped(x: int, radius: tuple[int, int]) -> bool:
    num, den = radius
    return abs(x) > 1 and abs(x) * den > num


def detect_preperiodic(f: Polynomial, a: int, budget: int = 10_000) -> PreperiodicWitness | None:
    """Walk the exact integer orbit of a: a repeat gives a witness, escape gives None.

    Once |x| passes the escape radius the absolute values increase strictly,
    so no value can recur.  Raises Inconclusive if neither happens in budget.
    """
    radius = _escape_radius(f)
    if radius is None and f.degree == 1 and f.leading == 1 and f.coeffs[0] != 0:
        return None  # x + c with c != 0 moves strictly monotonically
    seen: dict[int, int] = {}
    x = a
    for i in range(budget + 1):
        if x in seen:
            return PreperiodicWitness(a, seen[x], i - seen[x], x)
        if radius is not None and _escaped(x, radius):
            return None
        seen[x] = i
        x = f(x)
    raise Inconclusive(f"orbit of {a} neither repeated nor escaped within {budget} steps")


def _require_divergent(f: Polynomial, a: int) -> None:
    witness = detect_preperiodic(f, a)
    if witness is not None:
        raise PreperiodicStart(witness)


def _stability_gate(f: Polynomial, m: int, config: Config) -> None:
    for p, _ in factorize(m, None):
        if p > config.max_steps:
            raise BudgetExceeded(f"checking the {p}-cycle condition needs {p} steps", required=p)
        if is_p_cycle(f, p):
            raise NotTowerStable(p)


@dataclass(frozen=True)
class _Model:
    """How f^e(a) behaves modulo one prime power q."""

    modulus: int
    tail: int
    period: int
    shape: OrbitShape | None


@lru_cache(maxsize=1024)
def _prime_power_model(f: Polynomial, a: int, p: int, k: int, config: Config) -> _Model:
    q = p**k
    if f.degree >= 2:
        shape = orbit_shape(f, a, q, config.max_steps, config.cache_bound)
        return _Model(q, shape.tail, shape.cycle, shape)
    cert = lift_prime_power(f, a, p, k, config)
    return _Model(q, cert.tail_bound, cert.period, None)


def _models(f: Polynomial, a: int, m: int, config: Config) -> list[_Model]:
    return [_prime_power_model(f, a, p, k, config) for p, k in factorize(m, None)]


def _value(f: Polynomial, a: int, models: list[_Model], e: int) -> int:
    """f^e(a) modulo the product of the models' moduli, via CRT."""
    r, mod = 0, 1
    for md in models:
        if md.shape is not None:
            v = orbit_value(f, md.shape, e)
        else:
            v = linear_iterate(f, a, e, md.modulus)
        r, mod = crt_pair(r, mod, v, md.modulus)
    return r


def _reduced_exponent(residue: int, tail: int, period: int) -> int:
    return tail + (residue - tail) % period


@lru_cache(maxsize=4096)
def _limit(f: Polynomial, a: int, m: int, config: Config) -> int:
    if m == 1:
        return 0
    _stability_gate(f, m, config)
    models = _models(f, a, m, config)
    tail = max(md.tail for md in models)
    period = lcm_all(md.period for md in models)
    r = _limit(f, a, period, config)
    return _value(f, a, models, _reduced_exponent(r, tail, period))


def profinite_limit_mod(f: Polynomial, a: int, m: int, config: Config = DEFAULT) -> int:
    """The common limit t of every tower sequence from a, reduced mod m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    _require_divergent(f, a)
    return _limit(f, a, m, config)


def verify_selfref(
    f: Polynomial, a: int, x: int, m: int, mode: str = REDUCED, config: Config = DEFAULT
) -> bool:
    """Is f^x(a) = x (mod m)?

    ``reduced`` reads f^x(a) off the orbit shape (or the closed form for
    linear f); ``literal`` iterates x times and serves as the oracle.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if mode == LITERAL:
        return iterate_literal(f, a, x, m, config.literal_cap) == x % m
    if mode != REDUCED:
        raise ValueError(f"unknown mode {mode!r}")
    if m == 1:
        return True
    if f.degree <= 1:
        return linear_iterate(f, a, x, m) == x % m
    return _value(f, a, _models(f, a, m, config), x) == x % m


def digit_stream(f: Polynomial, a: int, b: int, n: int, config: Config = DEFAULT) -> DigitStream:
    """First n base-b digits of the limit, with a checked solution per level."""
    if b < 2:
        raise ValueError("base must be at least 2")
    if n < 1:
        raise ValueError("need at least one level")
    t = profinite_limit_mod(f, a, b**n, config)
    digits = []
    rest = t
    for _ in range(n):
        rest, d = divmod(rest, b)
        digits.append(d)
    partial, solutions, verified = [], [], []
    warnings = []
    x = 0
    for k, d in enumerate(digits, start=1):
        x += d * b ** (k - 1)
        partial.append(x)
        bk = b**k
        candidates = [x] if x > 0 else []
        candidates.append(x + bk)
        chosen, ok = candidates[0], None
        for cand in candidates:
            try:
                ok = verify_selfref(f, a, cand, bk, REDUCED, config)
            except BudgetExceeded:
                ok = None
                warnings.append(f"level {k}: verification skipped (budget)")
                break
            chosen = cand
            if ok:
                break
        if chosen != x:
            warnings.append(f"level {k}: partial sum {x} replaced by {chosen}")
        solutions.append(chosen)
        verified.append(ok)
    try:
        valid = is_f_valid_base(f, b, config)
    except Exception:  # validity is an annotation only
        valid = None
    if valid is False:
        warnings.append(f"base {b} is not f-valid; digit increments are not guaranteed")
    return DigitStream(
        render(f), a, b, tuple(digits), tuple(partial), tuple(solutions), tuple(verified), valid, tuple(warnings)
    )


def _escape_index(f: Polynomial, a: int, bound: int) -> int:
    """First n with |f^n(a)| > bound, after which the orbit never returns below."""
    radius = _escape_radius(f)
    x, n = a, 0
    while not (abs(x) > bound and (radius is None or _escaped(x, radius))):
        x = f(x)
        n += 1
    return n


def _exact_tower(f: Polynomial, a: int, seed: int, steps: int, threshold: int) -> list[int | None]:
    """Tower terms as exact integers while they stay at most ``threshold``, then None."""
    out: list[int | None] = [seed]
    for _ in range(steps):
        y = out[-1]
        if y is None:
            out.append(None)
            continue
        x = a
        for _ in range(y):
            x = f(x)
            if abs(x) > threshold:
                x = None
                break
        out.append(x)
    return out


def tower_sequence_mod(
    f: Polynomial, a: int, seed: int, m: int, steps: int = 12, config: Config = DEFAULT
) -> TowerTrace:
    """y_0 = seed, y_(k+1) = f^(y_k)(a), each term reduced mod m.

    Small terms are tracked exactly; a term too large to hold is used only
    through its residue modulo the orbit's cycle length, which comes from the
    same trace run at that smaller modulus.
    """
    if seed < 1:
        raise ValueError("seed must be positive")
    if m < 1:
        raise ValueError("modulus must be positive")
    _stability_gate(f, m, config)
    _require_divergent(f, a)
    threshold = max(m, 2**16, seed)
    while True:
        n = _escape_index(f, a, threshold)
        if n <= threshold:
            break
        threshold = n
    exact = _exact_tower(f, a, seed, steps, threshold)

    def trace(mod: int, count: int) -> list[int]:
        if mod == 1:
            return [0] * (count + 1)
        _stability_gate(f, mod, config)
        models = _models(f, a, mod, config)
        tail = max(md.tail for md in models)
        period = lcm_all(md.period for md in models)
        sub = None
        out = [seed % mod]
        for k in range(1, count + 1):
            y = exact[k - 1]
            if y is None:
                if tail > threshold:
                    raise BudgetExceeded(f"tail {tail} exceeds the exact-tracking threshold {threshold}")
                if sub is None:
                    sub = trace(period, count - 1)
                y = _reduced_exponent(sub[k - 1], tail, period)
            out.append(_value(f, a, models, y))
        return out

    values = tuple(trace(m, steps))
    return TowerTrace(seed, m, values, _stabilization_index(values))


def _stabilization_index(values) -> int | None:
    k = len(values) - 1
    while k > 0 and values[k - 1] == values[-1]:
        k -= 1
    return k if k < len(values) - 1 else None


def literal_tower(f: Polynomial, a: int, seed: int, steps: int, cap: int = DEFAULT.literal_cap) -> list[int]:
    """Exact tower terms by plain iteration over the integers, with no gate.

    Each term is used as an iteration count, so a term above ``cap`` stops
    the computation with BudgetExceeded.  So does an intermediate integer
    longer than ``cap`` bits.
    """
    out = [seed]
    for _ in range(steps):
        y = out[-1]
        if y > cap:
            raise BudgetExceeded(f"tower term {y} is too large to iterate literally", required=y)
        x = a
        for _ in range(y):
            x = f(x)
            if x.bit_length() > cap:
                raise BudgetExceeded("literal iterate outgrew the size cap", required=x.bit_length())
        out.append(x)
    return out


def literal_tower_mod(f: Polynomial, a: int, seed: int, m: int, steps: int, cap: int = DEFAULT.literal_cap) -> TowerTrace:
    """Tower terms mod m; all but the last are computed exactly first.

    The last term is never used as an iteration count, so it is iterated
    modulo m directly, which reaches one level higher than literal_tower.
    """
    if steps < 1:
        exact = [seed]
    else:
        exact = literal_tower(f, a, seed, steps - 1, cap)
        if exact[-1] > cap:
            raise BudgetExceeded(f"tower term {exact[-1]} is too large to iterate literally", required=exact[-1])
        exact.append(iterate_literal(f, a, exact[-1], m, cap))
    values = tuple(y % m for y in exact)
    return TowerTrace(seed, m, values, _stabilization_index(values))


def fixed_point_check(f: Polynomial, a: int, p: int, k: int, config: Config = DEFAULT) -> bool:
    """Does f^cycle(t) = t (mod p^k), where cycle is the orbit's cycle length mod p?"""
    if k <= 0:
        return True
    q = p**k
    t = profinite_limit_mod(f, a, q, config)
    lam = orbit_shape(f, a, p, config.max_steps, config.cache_bound).cycle
    return iterate_literal(f, t, lam, q, config.literal_cap) == t
