"""Compare the compiled and pure-Python kernels on the census hot loops.

    python benchmarks/bench_kernels.py [--pmax 200] [--repeat 3]
"""
import argparse
import time
from math import gcd

from lensfloer import kernels


def tables(k, pmax):
    for p in range(2, pmax + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                k.d_table_scaled(p, q)


def census(k, pmax):
    for p in range(2, pmax + 1):
        k.census_row(p, False)


def brown(k, pmax):
    for p in range(2, pmax + 1):
        k.brown_row(p, 0)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = kernels.available_backends()
    print(f"p <= {args.pmax}, best of {args.repeat}; backends: {', '.join(names)}")
    print(f"{'kernel':<12}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in [("d-tables", tables), ("census_row", census), ("brown_row", brown)]:
        ts = {n: best_of(lambda: fn(kernels.backend(n), args.pmax), args.repeat) for n in names}
        line = f"{label:<12}" + "".join(f"{ts[n]:>11.3f}s" for n in names)
        if "cython" in ts and "python" in ts:
            line += f"{ts['python'] / ts['cython']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
