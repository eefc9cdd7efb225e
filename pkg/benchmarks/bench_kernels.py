"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5] [--size 300]

Both paths are checked for identical output before timing.
"""
import argparse
import time

import numpy as np

from jacring import _kernels as K
from jacring.forms import capped_monomials
from jacring.linalg import DEFAULT_PRIME


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_rref(size, repeat, rng):
    p = DEFAULT_PRIME
    a = rng.integers(0, p, size=(size, size + size // 2), dtype=np.int64)
    a[size // 2:] = a[: size - size // 2]  # force rank deficiency
    r1, _ = K.rref_modp_numpy(x := a.copy(), p)
    r2, _ = K._rref_modp_nb(y := a.copy(), np.int64(p))
    assert r1 == r2 and np.array_equal(x, y)
    t_np = best_of(lambda: K.rref_modp_numpy(a.copy(), p), repeat)
    t_nb = best_of(lambda: K._rref_modp_nb(a.copy(), np.int64(p)), repeat)
    return f"rref_modp {size}x{a.shape[1]}", t_np, t_nb


def bench_matmul(size, repeat, rng):
    p = DEFAULT_PRIME
    a = rng.integers(0, p, size=(size, size), dtype=np.int64)
    b = rng.integers(0, p, size=(size, size), dtype=np.int64)
    assert np.array_equal(K.matmul_modp_numpy(a, b, p), K._matmul_modp_nb(a, b, np.int64(p)))
    t_np = best_of(lambda: K.matmul_modp_numpy(a, b, p), repeat)
    t_nb = best_of(lambda: K._matmul_modp_nb(a, b, np.int64(p)), repeat)
    return f"matmul_modp {size}x{size}", t_np, t_nb


def bench_capped(repeat):
    caps = np.array([4] * 6, dtype=np.int64)  # sextic in 6 variables
    left = np.array(capped_monomials(6, tuple(caps)), dtype=np.int64)
    right = np.array(capped_monomials(5, tuple(caps)), dtype=np.int64)
    w = K._radix_weights(caps)
    assert np.array_equal(K.capped_products_numpy(left, right, caps),
                          K._capped_products_nb(left, right, caps, w))
    t_np = best_of(lambda: K.capped_products_numpy(left, right, caps), repeat)
    t_nb = best_of(lambda: K._capped_products_nb(left, right, caps, w), repeat)
    return f"capped_products {len(left)}x{len(right)}", t_np, t_nb


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    rows = [bench_rref(args.size, args.repeat, rng),
            bench_matmul(args.size, args.repeat, rng),
            bench_capped(args.repeat)]
    print(f"{'kernel':<32}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>9}")
    for name, t_np, t_nb in rows:
        print(f"{name:<32}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
