"""Timing comparison of the compiled and pure-Python kernel backends.

Run from the repository root:

    python3 benchmarks/bench_kernels.py --size 256 --repeats 20
"""

import argparse
import time

import numpy as np

from tomokit.kernels import available_backends, set_backend
import tomokit.kernels as kernels


def build_workload(size):
    rng = np.random.default_rng(11)
    q = np.linspace(-7.0, 7.0, size)
    p = np.linspace(-7.0, 7.0, size)
    dq = q[1] - q[0]
    dp = p[1] - p[0]
    W = np.exp(-q[:, None] ** 2 - p[None, :] ** 2) / np.pi
    vq = q + 0.4 * q ** 3
    vqqq = 2.4 * q
    xq = rng.uniform(-6.0, 6.0, size=4 * size)
    yq = rng.uniform(-6.0, 6.0, size=4 * size)
    xs = np.linspace(-6.0, 6.0, size)
    s = np.linspace(-9.9, 9.9, 2 * size)
    return {
        "interp2": lambda: kernels.interp2(W, q[0], dq, p[0], dp, xq, yq),
        "radon_row": lambda: kernels.radon_row(W, q[0], dq, p[0], dp, xs,
                                               0.6, 0.8, s),
        "liouville_rhs": lambda: kernels.liouville_rhs(W, p, vq, dq, dp),
        "moyal_rhs": lambda: kernels.moyal_rhs(W, p, vq, vqqq, dq, dp),
    }


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=256,
                        help="grid points per axis (default 256)")
    parser.add_argument("--repeats", type=int, default=20,
                        help="timing repeats; best run is reported")
    args = parser.parse_args()

    backends = available_backends()
    work = build_workload(args.size)
    rows = {name: {} for name in work}
    for backend in backends:
        set_backend(backend)
        for name, fn in work.items():
            fn()  # warm up
            rows[name][backend] = best_of(fn, args.repeats)

    width = max(len(n) for n in rows) + 2
    header = f"{'kernel':<{width}}" + "".join(f"{b:>14}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(f"grid {args.size}x{args.size}, best of {args.repeats}")
    print(header)
    for name, times in rows.items():
        line = f"{name:<{width}}"
        line += "".join(f"{times[b] * 1e3:>12.3f}ms" for b in backends)
        if len(backends) > 1:
            line += f"{times['python'] / times['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
