"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--sizes 20,60,120] [--repeat 3]

Kernel rows time one call on a random dense game with n Min and 2n Max
nodes; the pipeline row reconstructs the spectral function of a random
4 x 8 pencil end to end.  The first numba call is excluded (JIT warm-up).
"""

import argparse
import time

import numpy as np

from maxplus_pencil import _kernels as K
from maxplus_pencil import accel, generators, spectral


def random_game(n, rng, W=50):
    min_w = rng.integers(-W, W + 1, size=(n, 2 * n)).astype(np.int64)
    max_w = rng.integers(-W, W + 1, size=(2 * n, n)).astype(np.int64)
    return min_w, max_w


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_cases(n, rng):
    min_w, max_w = random_game(n, rng)
    x0 = np.zeros(n, dtype=np.int64)
    w = rng.integers(-50, 51, size=(n, n)).astype(np.int64)
    bound = (n - 1) * 100 + 1
    return {
        "vi_sweeps x200": lambda be: be[0](min_w, max_w, x0, 200),
        "energy_down": lambda be: be[1](min_w, max_w, bound, 10**6),
        "karp": lambda be: be[3](w),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="20,60,120")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba is not importable; only the numpy backend exists")
    backends = {name: accel._BACKENDS[name] for name in ("numba", "numpy")}
    rng = np.random.default_rng(0)
    print(f"{'case':<22}{'n':>6}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for n in map(int, args.sizes.split(",")):
        for label, fn in kernel_cases(n, rng).items():
            t = {name: best_of(lambda: fn(be), args.repeat) for name, be in backends.items()}
            print(f"{label:<22}{n:>6}{t['numba']:>12.4f}{t['numpy']:>12.4f}{t['numpy'] / t['numba']:>10.1f}")
    inst = generators.gen_random(4, 8, 10, 0.7, seed=3)
    t = {}
    for name in backends:
        accel.set_backend(name)
        t[name] = best_of(lambda: spectral.reconstruct_spectral_function(inst.A, inst.B), args.repeat)
    print(f"{'reconstruct 4x8':<22}{8:>6}{t['numba']:>12.4f}{t['numpy']:>12.4f}{t['numpy'] / t['numba']:>10.1f}")


if __name__ == "__main__":
    main()
