"""Times the hot kernels under both backends.

Run:  python benchmarks/bench_kernels.py
The numba path needs numba installed; without it only numpy lines print.
"""

import time

import numpy as np

import ocfsim.kernels.numpy_backend as np_impl

try:
    import ocfsim.kernels.numba_backend as nb_impl
except ImportError:
    nb_impl = None


def _time(fn, *args, repeat=5):
    fn(*args)  # warm-up (and JIT compile for numba)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rules(impl, rng):
    n, n_rules = 50, 500
    sizes = rng.integers(1, 5, size=n_rules).astype(np.int64)
    offsets = np.zeros(n_rules + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    flat = np.concatenate(
        [np.sort(rng.choice(n, s, replace=False)) for s in sizes]
    ).astype(np.int64)
    values = rng.normal(0, 100, size=n_rules)
    pi = np.where(rng.random(n) < 0.4, rng.random(n), 0.0)
    mask = pi > 0

    def run():
        for _ in range(200):
            impl.rules_base_value(flat, offsets, sizes, values, pi, mask)

    return _time(run) / 200


def bench_knapsack(impl, rng):
    m, capacity = 30, 500
    values = rng.random(m) * 10
    weights = rng.integers(1, 60, size=m)

    def run():
        for _ in range(20):
            impl.knapsack_tables(values, weights, capacity)

    return _time(run) / 20


def bench_estep(impl, rng):
    K, V, docs = 15, 52, 40
    lam = rng.gamma(100.0, 0.01, size=(K, V))
    sizes = rng.integers(5, 30, size=docs)
    offsets = np.zeros(docs + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    ids = np.concatenate([rng.choice(V, s, replace=False) for s in sizes]).astype(np.int64)
    cts = rng.integers(1, 6, size=int(offsets[-1])).astype(np.float64)
    gamma0 = np.ones((docs, K))

    def run():
        impl.lda_estep_batch(lam, 1 / 15, 1e-3, 100, offsets, ids, cts, gamma0)

    return _time(run)


def main():
    rng = np.random.default_rng(0)
    rows = []
    benches = [
        ("rule valuation (500 rules, per coalition)", bench_rules),
        ("knapsack tables (30 items, cap 500)", bench_knapsack),
        ("LDA E-step (40-doc batch, K=15, V=52)", bench_estep),
    ]
    for label, bench in benches:
        numpy_s = bench(np_impl, np.random.default_rng(0))
        if nb_impl is not None:
            numba_s = bench(nb_impl, np.random.default_rng(0))
            rows.append((label, numpy_s, numba_s, numpy_s / numba_s))
        else:
            rows.append((label, numpy_s, None, None))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy':>12}  {'numba':>12}  {'speedup':>8}")
    for label, numpy_s, numba_s, speedup in rows:
        if numba_s is None:
            print(f"{label:<{width}}  {numpy_s * 1e3:>10.3f}ms  {'n/a':>12}  {'n/a':>8}")
        else:
            print(
                f"{label:<{width}}  {numpy_s * 1e3:>10.3f}ms  {numba_s * 1e3:>10.3f}ms"
                f"  {speedup:>7.1f}x"
            )


if __name__ == "__main__":
    main()
