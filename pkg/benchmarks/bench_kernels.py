"""Time the numba and numpy kernel backends side by side.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported directly so one process can time them; the first
numba call is reported separately since it includes compilation.
"""

import argparse
import time

import numpy as np

from coneperturb.kernels import numba_impl, numpy_impl


def _symmetric(rng, b, n):
    g = rng.standard_normal((b, n, n))
    return (g + np.swapaxes(g, 1, 2)) / 2


def cases(rng):
    return [
        ("eigh_batch 2000x(4x4)", "eigh_batch", (_symmetric(rng, 2000, 4),)),
        ("eigh_batch 200x(12x12)", "eigh_batch", (_symmetric(rng, 200, 12),)),
        ("simplex_min_batch 200x(4x4)", "simplex_min_batch", (_symmetric(rng, 200, 4),)),
        ("simplex_min_batch 5x(10x10)", "simplex_min_batch", (_symmetric(rng, 5, 10),)),
        ("simplex_grid_min 4x4 @ 1/200", "simplex_grid_min", (_symmetric(rng, 1, 4)[0], 200)),
    ]


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if numba_impl is None:
        raise SystemExit("numba backend unavailable (not installed, or CONEPERTURB_PURE_NUMPY is set)")
    rng = np.random.default_rng(args.seed)
    print(f"{'case':34s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s} {'jit warmup s':>13s}")
    for label, name, call in cases(rng):
        start = time.perf_counter()
        getattr(numba_impl, name)(*call)
        warm = time.perf_counter() - start
        t_np = best_of(getattr(numpy_impl, name), call, args.repeat)
        t_nb = best_of(getattr(numba_impl, name), call, args.repeat)
        print(f"{label:34s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:7.1f}x {warm:13.2f}")


if __name__ == "__main__":
    main()
