"""Timing comparison of the numba block kernels against the numpy twins.

Runs each hot kernel on a grid of block shapes and reports per-call times
for both backends plus the speedup.  The numba twins are warmed up first so
JIT compilation is excluded from the timings.

Usage:
    python benchmarks/bench_kernels.py [--repeats 20000] [--shapes 2x2,2x3,4x4]

Forcing the fallback path of the library itself is a separate switch:
    JBH_PURE_NUMPY=1 python -c "import jbhoro; print(jbhoro.BACKEND)"
"""

import argparse
import time

import numpy as np

from jbhoro import _kernels


def _random_block(rng, p, q):
    return rng.normal(size=(p, q)) + 1j * rng.normal(size=(p, q))


def _time(fn, args, repeats):
    fn(*args)  # warm-up (JIT compile / cache load)
    start = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - start) / repeats


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=20000)
    parser.add_argument("--shapes", default="2x2,2x3,3x3,4x4")
    args = parser.parse_args()

    try:
        numba_kernels = _kernels._build_numba_twins()
    except ImportError:
        print("numba not importable; nothing to compare")
        return

    shapes = [tuple(int(v) for v in s.split("x")) for s in args.shapes.split(",")]
    rng = np.random.default_rng(0)
    kernels = ["triple_block", "quadratic_block", "bergman_block",
               "box_matrix_block", "qq_matrix_block"]
    arity = {"triple_block": 3, "quadratic_block": 2, "bergman_block": 3,
             "box_matrix_block": 2, "qq_matrix_block": 2}

    print(f"{'kernel':<18} {'shape':<6} {'numpy us':>10} {'numba us':>10} {'speedup':>8}")
    for name in kernels:
        for p, q in shapes:
            blocks = tuple(_random_block(rng, p, q) for _ in range(arity[name]))
            t_np = _time(_kernels.NUMPY_KERNELS[name], blocks, args.repeats)
            t_nb = _time(numba_kernels[name], blocks, args.repeats)
            print(f"{name:<18} {p}x{q:<4} {t_np * 1e6:>10.2f} {t_nb * 1e6:>10.2f} "
                  f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
