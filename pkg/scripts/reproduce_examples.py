"""Print the two worked digit expansions and the tower traces behind them.

    python3 scripts/reproduce_examples.py
"""

import time

from tower_limits import digit_stream, parse_poly, tower_sequence_mod


def show(text, a, levels):
    f = parse_poly(text)
    t0 = time.perf_counter()
    stream = digit_stream(f, a, 10, levels)
    dt = time.perf_counter() - t0
    print(f"f = {text}, a = {a}")
    print(f"  limit mod 10^{levels}: {stream.window()}   ({dt:.2f}s)")
    print(f"  first solutions: {', '.join(map(str, stream.solutions[:3]))}")
    print(f"  every level verified: {all(stream.verified)}")


def main():
    show("x^2+x+3", 0, 9)
    show("7x", 1, 22)
    f = parse_poly("x^2+x+3")
    print("tower traces of x^2+x+3 from a = 0, mod 1000:")
    for seed in (1, 2, 5, 9):
        trace = tower_sequence_mod(f, 0, seed, 1000, steps=6)
        print(f"  seed {seed}: {' '.join(map(str, trace.values))}")


if __name__ == "__main__":
    main()
