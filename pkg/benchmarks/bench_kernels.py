"""Compare the numba kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Outputs are checked for equality before timing.
"""

import argparse
import time

import numpy as np

from twobytwo import _kernels as K


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = np.random.default_rng(0)
    u = rng.random(4_000_000)
    cum = np.array([0.4, 0.5, 0.7])
    cells = K.draw_cells_numpy(u, cum)
    x = rng.random(6000) < 0.4
    y = rng.random(6000) < 0.6
    tables = rng.dirichlet(np.ones(4), 200_000)
    yield "draw_cells (4e6)", K.draw_cells_numpy, K.draw_cells_numba, (u, cum)
    yield "tally (4e6)", K.tally_numpy, K.tally_numba, (cells,)
    yield "enumerate_pairs (6e3 x 6e3)", K.enumerate_pairs_numpy, K.enumerate_pairs_numba, (x, y)
    yield "batch_signs (2e5 tables)", K.batch_signs_numpy, K.batch_signs_numba, (tables, 1e-12)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if K.numba is None:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':<30}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for name, slow, fast, a in cases():
        assert same(slow(*a), fast(*a)), name  # also triggers compilation
        t_np = best_of(slow, a, args.repeat)
        t_nb = best_of(fast, a, args.repeat)
        print(f"{name:<30}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
