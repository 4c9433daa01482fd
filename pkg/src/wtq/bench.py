"""Quantile latency as a function of alphabet size."""

from __future__ import annotations

import time

import numpy as np

from .wavelet_tree import WaveletTree


def random_sequence(n: int, sigma: int, seed: int) -> np.ndarray:
    """length-n sequence over 0..sigma-1 using every symbol at least once (when sigma <= n)"""
    rng = np.random.default_rng([seed, sigma])
    s = rng.integers(0, sigma, size=n, dtype=np.uint64)
    m = min(n, sigma)
    s[rng.choice(n, size=m, replace=False)] = rng.permutation(sigma)[:m].astype(np.uint64)
    return s


def random_queries(n: int, count: int, seed: int) -> list[tuple[int, int, int]]:
    """(k, l, r) triples with 1 <= l <= r <= n and 1 <= k <= r - l + 1"""
    rng = np.random.default_rng([seed, n, count])
    a = rng.integers(1, n + 1, size=count)
    b = rng.integers(1, n + 1, size=count)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    k = 1 + (rng.random(count) * (hi - lo + 1)).astype(np.int64)
    return list(zip(k.tolist(), lo.tolist(), hi.tolist()))


def time_quantiles(wt: WaveletTree, queries) -> float:
    """mean nanoseconds per quantile call; 0.0 for an empty batch"""
    if not queries:
        return 0.0
    quantile = wt.quantile
    t0 = time.perf_counter_ns()
    for k, l, r in queries:  # noqa: E741
        quantile(k, l, r)
    return (time.perf_counter_ns() - t0) / len(queries)


def run_bench(n: int, sigmas, queries: int, seed: int = 0) -> list[tuple[int, float]]:
    results = []
    for sigma in sigmas:
        wt = WaveletTree(random_sequence(n, sigma, seed))
        results.append((sigma, time_quantiles(wt, random_queries(n, queries, seed))))
    return results
