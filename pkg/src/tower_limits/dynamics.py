"""Finite dynamics of a polynomial reduced modulo m.

Two routes to the same rho-shaped data: :func:`analyze_map` enumerates the
whole functional graph of f mod m (vectorised with numpy, small m only), and
:func:`orbit_shape` follows a single orbit with Brent's cycle finder, which
works for moduli far too large to enumerate.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .config import DEFAULT
from .errors import BudgetExceeded
from .polyparse import Polynomial, eval_mod


@dataclass(frozen=True)
class OrbitShape:
    """Tail length and cycle length of the orbit of ``start`` modulo ``modulus``.

    ``prefix`` holds f^0(a), ..., f^(tail+cycle-1)(a) mod m when the orbit was
    short enough to cache, otherwise None.
    """

    modulus: int
    start: int
    tail: int
    cycle: int
    entry: int
    prefix: array | list | None = field(default=None, compare=False, repr=False)

    def index_for(self, e: int) -> int:
        """Smallest index in the stored orbit that lands where f^e(a) lands."""
        if e < self.tail:
            return e
        return self.tail + (e - self.tail) % self.cycle


@dataclass(eq=False)
class GraphSummary:
    """Per-residue tails and cycle lengths of the map x -> f(x) mod m."""

    modulus: int
    successor: np.ndarray
    tails: np.ndarray
    cycles: np.ndarray
    entries: np.ndarray

    @property
    def preperiod(self) -> int:
        return int(self.tails.max())

    @property
    def period(self) -> int:
        return math.lcm(*(int(c) for c in np.unique(self.cycles)))

    def shape(self, a: int) -> OrbitShape:
        a %= self.modulus
        return OrbitShape(self.modulus, a, int(self.tails[a]), int(self.cycles[a]), int(self.entries[a]))

    def cycle_inventory(self) -> list[list[int]]:
        """Every cycle of the map, each listed from its smallest element."""
        on_cycle = np.flatnonzero(self.tails == 0)
        seen = set()
        out = []
        succ = self.successor
        for x in on_cycle.tolist():
            if x in seen:
                continue
            cyc = [x]
            seen.add(x)
            y = int(succ[x])
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = int(succ[y])
            out.append(cyc)
        return sorted(out)


def _successor_array(f: Polynomial, m: int) -> np.ndarray:
    if m > 3 * 10**9:
        raise ValueError("modulus too large for int64 enumeration")
    x = np.arange(m, dtype=np.int64)
    acc = np.zeros(m, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc = (acc * x + (c % m)) % m
    return acc


def analyze_map(f: Polynomial, m: int, ceiling: int = DEFAULT.enum_ceiling) -> GraphSummary:
    """Exact tail and cycle length for every residue mod m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m > ceiling:
        raise BudgetExceeded(f"modulus {m} exceeds the enumeration ceiling {ceiling}", required=m)
    succ = _successor_array(f, m)

    # f^(2^j) with 2^j >= m maps every point onto its cycle, and every cyclic
    # point is hit, so the image is exactly the set of cyclic points.
    jump = succ
    for _ in range(max(1, (m - 1).bit_length())):
        jump = jump[jump]
    on_cycle = np.zeros(m, dtype=bool)
    on_cycle[jump] = True

    # Cycle length: label each cyclic point by the smallest point on its cycle
    # (pointer jumping with a running minimum), then count labels.
    idx = np.arange(m, dtype=np.int64)
    label = np.where(on_cycle, idx, m)
    ptr = succ.copy()
    span = 1
    while span < m:
        label = np.minimum(label, label[ptr])
        ptr = ptr[ptr]
        span *= 2
    counts = np.bincount(label[on_cycle], minlength=m)

    # Tails by list ranking: cyclic points point at themselves with distance 0.
    ptr = np.where(on_cycle, idx, succ)
    dist = np.where(on_cycle, 0, 1).astype(np.int64)
    while not on_cycle[ptr].all():
        dist = dist + dist[ptr]
        ptr = ptr[ptr]
    entries = ptr
    cycles = counts[label[entries]]
    return GraphSummary(m, succ, dist, cycles, entries)


def _brent_cycle_length(step, x0: int, max_steps: int) -> int:
    power = lam = 1
    tortoise = x0
    hare = step(x0)
    evals = 1
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1
        evals += 1
        if evals > max_steps:
            raise BudgetExceeded(
                f"orbit did not close within {max_steps} steps", required=None
            )
    return lam


@lru_cache(maxsize=256)
def orbit_shape(
    f: Polynomial,
    a: int,
    m: int,
    max_steps: int = DEFAULT.max_steps,
    cache_bound: int = DEFAULT.cache_bound,
) -> OrbitShape:
    """Minimal (tail, cycle) of the orbit of a mod m, by Brent's method."""
    if m < 1:
        raise ValueError("modulus must be positive")
    a %= m
    if m == 1:
        return OrbitShape(1, 0, 0, 1, 0, [0])
    step = f.step_function(m)
    lam = _brent_cycle_length(step, a, max_steps)

    if lam <= cache_bound:
        # Walk once, storing values; the tail ends at the first j with
        # orbit[j] == orbit[j + lam].
        store = array("q") if m <= 2**63 else []
        x = a
        for _ in range(lam):
            store.append(x)
            x = step(x)
        j = 0
        while store[j] != x:
            if len(store) >= cache_bound:
                break
            store.append(x)
            x = step(x)
            j += 1
            if j + lam > max_steps:
                raise BudgetExceeded(f"orbit tail longer than {max_steps} steps", required=j + lam)
        else:
            return OrbitShape(m, a, j, lam, store[j], store)

    tortoise = a
    hare = a
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
        if mu + lam > max_steps:
            raise BudgetExceeded(f"orbit tail longer than {max_steps} steps", required=mu + lam)
    return OrbitShape(m, a, mu, lam, tortoise, None)


def orbit_value(f: Polynomial, shape: OrbitShape, e: int) -> int:
    """f^e(start) mod m read off the orbit shape, for any e >= 0."""
    i = shape.index_for(e)
    if shape.prefix is not None:
        return shape.prefix[i]
    step = f.step_function(shape.modulus)
    x = shape.start
    for _ in range(i):
        x = step(x)
    return x


def iterate_reduced(
    f: Polynomial,
    a: int,
    m: int,
    shape: OrbitShape,
    residue: int,
    period: int,
    floor: int = 0,
) -> int:
    """f^e(a) mod m for the least e >= max(floor, tail) with e = residue (mod period).

    ``period`` must be a multiple of the orbit's cycle length; e is never
    iterated literally.
    """
    if period % shape.cycle:
        raise ValueError(f"period {period} is not a multiple of the cycle length {shape.cycle}")
    if shape.modulus != m or shape.start != a % m:
        raise ValueError("orbit shape does not belong to this start point and modulus")
    low = max(floor, shape.tail)
    e = low + (residue - low) % period
    return orbit_value(f, shape, e)


def iterate_literal(f: Polynomial, a: int, e: int, m: int, cap: int = DEFAULT.literal_cap) -> int:
    """f^e(a) mod m by e plain steps; the independent oracle for reduced iteration."""
    if e > cap:
        raise BudgetExceeded(f"literal iteration of {e} steps exceeds the cap {cap}", required=e)
    step = f.step_function(m)
    x = a % m
    for _ in range(e):
        x = step(x)
    return x


__all__ = [
    "OrbitShape",
    "GraphSummary",
    "analyze_map",
    "orbit_shape",
    "orbit_value",
    "iterate_reduced",
    "iterate_literal",
    "eval_mod",
]
