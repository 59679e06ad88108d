"""Compare the compiled GMP kernel with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--size 60] [--repeat 3]
"""

import argparse
import random
import time
from fractions import Fraction

from bocskit.linalg import _backend


def random_rows(n, seed):
    rng = random.Random(seed)
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def run(size, repeat, seed=0):
    rows = random_rows(size, seed)
    out = {}
    reference = None
    for which in ("python", "gmp"):
        try:
            _backend.use(which)
        except ImportError:
            print(f"{which:>6}: not available")
            continue
        k = _backend.kernel
        result = k.rref(rows, size)
        if reference is None:
            reference = result
        elif result != reference:
            raise SystemExit("kernels disagree")
        out[which] = {
            "rref": best_of(lambda: k.rref(rows, size), repeat),
            "matmul": best_of(lambda: k.matmul(rows, rows, size, size), repeat),
        }
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    res = run(args.size, args.repeat)
    for which, t in res.items():
        print(f"{which:>6}: rref {t['rref']:.4f}s  matmul {t['matmul']:.4f}s  ({args.size}x{args.size})")
    if len(res) == 2:
        print(f"speedup: rref x{res['python']['rref'] / res['gmp']['rref']:.1f}, "
              f"matmul x{res['python']['matmul'] / res['gmp']['matmul']:.1f}")


if __name__ == "__main__":
    main()
