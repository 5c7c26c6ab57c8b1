"""Empirical frequency of polynomials with no p-cycle for small primes.

Draws random integer polynomials and counts how often none of the primes
up to a bound gives a full cycle mod p.  The count is printed next to the
heuristic product over the same primes; the two are separate numbers and
nothing here claims they must coincide.

    python3 scripts/stable_frequency.py --samples 2000 --degree 4 --coeff 9
"""

import argparse
import random

from tower_limits import Polynomial
from tower_limits.arith import primes_up_to
from tower_limits.stability import ctow_partial, is_p_cycle


def sample(rng, degree, coeff):
    d = rng.randint(1, degree)
    coeffs = [rng.randint(-coeff, coeff) for _ in range(d)]
    coeffs.append(rng.choice([c for c in range(-coeff, coeff + 1) if c]))
    return Polynomial(coeffs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--coeff", type=int, default=9)
    ap.add_argument("--prime-bound", type=int, default=50)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    primes = primes_up_to(args.prime_bound)
    survivors = 0
    for _ in range(args.samples):
        f = sample(rng, args.degree, args.coeff)
        if not any(is_p_cycle(f, p) for p in primes):
            survivors += 1
    freq = survivors / args.samples
    print(f"samples: {args.samples}, degree <= {args.degree}, |coeff| <= {args.coeff}")
    print(f"no p-cycle for p <= {args.prime_bound}: {freq:.4f}")
    print(f"heuristic product over the same primes: {ctow_partial(args.prime_bound):.4f}")


if __name__ == "__main__":
    main()
