"""Compare the compiled kernel backend against the numpy fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--sizes 100,500,1000] [--repeats 5]

Each kernel is timed on square float64 inputs of the given sizes; the table
reports the best wall time per backend and the speedup of the compiled
extension over the fallback.  Both backends are imported directly so the
benchmark works no matter which one the package selected at import time.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from clinicalqa.accel import _pykernels

try:
    from clinicalqa.accel import _ckernels
except ImportError:
    _ckernels = None

KERNELS = ("pairwise_sq_distances", "erbf_kernel_matrix", "dot_products")
GAMMA = 0.005


def time_call(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def make_args(kernel: str, size: int, rng) -> tuple:
    a = rng.random((size, 32))
    b = rng.random((size, 32))
    if kernel == "pairwise_sq_distances":
        return (a, b)
    if kernel == "erbf_kernel_matrix":
        return (a, b, GAMMA)
    return (rng.random(32), a)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="100,500,1000",
                        help="comma-separated row counts to benchmark")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timed repetitions per cell; best time wins")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _ckernels is None:
        print("compiled extension not built; timing the numpy fallback only")

    header = f"{'kernel':<24} {'rows':>6} {'numpy (ms)':>12}"
    if _ckernels is not None:
        header += f" {'cython (ms)':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))

    rng = np.random.default_rng(0)
    for kernel in KERNELS:
        for size in sizes:
            call_args = make_args(kernel, size, rng)
            py_fn = getattr(_pykernels, kernel)
            py_time = time_call(py_fn, call_args, args.repeats)
            line = f"{kernel:<24} {size:>6} {py_time * 1e3:>12.3f}"
            if _ckernels is not None:
                c_fn = getattr(_ckernels, kernel)
                c_time = time_call(c_fn, call_args, args.repeats)
                ratio = py_time / c_time if c_time > 0 else float("inf")
                line += f" {c_time * 1e3:>12.3f} {ratio:>7.2f}x"
                # agreement check rides along with the timing
                assert np.allclose(py_fn(*call_args), c_fn(*call_args),
                                   atol=1e-12, rtol=0)
            print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
