"""Integer polynomials in one variable: parsing, rendering and modular evaluation.

A polynomial c_0 + c_1 x + ... + c_d x^d is stored densely as the tuple
(c_0, ..., c_d). The highest entry is nonzero except for the zero
polynomial, which is (0,).

Grammar accepted by :func:`parse_poly` (whitespace ignored)::

    expr := ['-'] term (('+' | '-') term)*
    term := [nat] ['*'] 'x' ['^' nat] | nat
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import PolynomialSyntaxError


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = [int(c) for c in coeffs] or [0]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __str__(self) -> str:
        return render(self)

    def step_function(self, m: int) -> Callable[[int], int]:
        """Return a fast ``x -> f(x) mod m`` for residues ``0 <= x < m``.

        This is the inner loop of every orbit walk, so the Horner chain is
        unrolled into a single expression with constant coefficients. The
        reduction happens once at the end; the result equals :func:`eval_mod`.
        """
        if m < 1:
            raise ValueError("modulus must be positive")
        if m == 1:
            return lambda x: 0
        reduced = [c % m for c in self.coeffs]
        expr = str(reduced[-1])
        for c in reversed(reduced[:-1]):
            expr = f"({expr}) * x + {c}" if c else f"({expr}) * x"
        if len(reduced) == 1:
            value = reduced[0]
            return lambda x: value
        return eval(f"lambda x: ({expr}) % {m}")  # expr is built from ints only


def eval_mod(f: Polynomial, x: int, m: int) -> int:
    """f(x) mod m by Horner's rule, reducing every intermediate value."""
    if m < 1:
        raise ValueError("modulus must be positive")
    x %= m
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % m
    return acc


def derivative(f: Polynomial) -> Polynomial:
    return Polynomial([i * c for i, c in enumerate(f.coeffs)][1:] or [0])


def maps_naturals_into_naturals(f: Polynomial) -> bool:
    """Decide whether f(n) >= 1 for every integer n >= 1.

    Past the Cauchy root bound of f - 1 the sign of f - 1 is that of the
    leading coefficient, so only finitely many n need checking.
    """
    if f.degree == 0:
        return f.leading >= 1
    if f.leading < 0:
        return False
    g = list(f.coeffs)
    g[0] -= 1
    lead = g[-1]
    bound = 1 + max(math.ceil(abs(c) / lead) for c in g[:-1])
    return all(f(n) >= 1 for n in range(1, bound + 1))


def render(f: Polynomial) -> str:
    """Canonical text form, highest degree first; parses back to ``f``."""
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c == 0 and not (i == 0 and not parts):
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
        if parts:
            parts.append(sign + body)
        else:
            parts.append(("-" if c < 0 else "") + body)
    return "".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise PolynomialSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a non-negative integer")
        if self.pos < len(self.text) and self.text[self.pos] in ".eE/":
            self.error("non-integer literal", start)
        return int(self.text[start : self.pos])

    def term(self) -> tuple[int, int]:
        ch = self.peek()
        coef = None
        if ch.isdigit():
            coef = self.nat()
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                ch = self.peek()
                if ch != "x":
                    self.expect_variable()
        elif ch == ".":
            self.error("non-integer literal")
        if ch == "x":
            self.pos += 1
            power = 1
            if self.peek() == "^":
                self.pos += 1
                power = self.nat()
            return (1 if coef is None else coef), power
        if ch.isalpha() or ch == "_":
            self.expect_variable()
        if coef is None:
            self.error("expected a term")
        return coef, 0

    def expect_variable(self):
        ch = self.peek()
        if (ch.isalpha() or ch == "_") and ch != "x":
            self.error(f"unknown variable {ch!r} (only 'x' is allowed)")
        self.error("expected 'x'")

    def parse(self) -> Polynomial:
        terms: dict[int, int] = {}
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        while True:
            coef, power = self.term()
            terms[power] = terms.get(power, 0) + sign * coef
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                if (ch.isalpha() or ch == "_") and ch != "x":
                    self.expect_variable()
                self.error(f"unexpected character {ch!r}")
            sign = 1 if ch == "+" else -1
            self.pos += 1
        coeffs = [0] * (max(terms) + 1)
        for power, c in terms.items():
            coeffs[power] += c
        return Polynomial(coeffs)


def parse_poly(text: str) -> Polynomial:
    """Parse an integer polynomial in ``x``, e.g. ``"x^2+x+3"`` or ``"7x"``."""
    return _Parser(text).parse()
