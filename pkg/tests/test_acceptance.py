"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import random
import time

import numpy as np
import pytest

from wtq import DocIndex, WaveletTree
from wtq.bench import random_queries, random_sequence, time_quantiles
from wtq.oracle import naive_distinct, naive_doclist, naive_quantile, naive_range_count

from .conftest import ABRA, FIG1

FIG1_TRACE = [(5, 3, 9), (2, 2, 5), (2, 2, 3), (1, 1, 1)]


@pytest.fixture
def record(request):
    lines = request.config._acceptance_lines

    def _record(number, name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name}" + (f" ({detail})" if detail else "")
        lines.append(line)
        print(line)
        assert ok, line

    return _record


def fresh(s):
    return WaveletTree(s)


def reloaded(s):
    return WaveletTree.from_bytes(WaveletTree(s).to_bytes())


def fig1_reproduced(make):
    value, trace = make(FIG1).quantile_trace(5, 3, 9)
    return value == 7 and [tuple(t) for t in trace] == FIG1_TRACE, f"value={value} trace={[tuple(t) for t in trace]}"


def abra_reproduced(make):
    wt = make(ABRA)
    bits = str(wt.root_bits())
    left = "".join(chr(v) for v in wt.root_split()[0])
    return bits == "00100010010" and left == "abc", f"root={bits} left={{{','.join(left)}}}"


def oracle_equivalence(make):
    mismatches = 0
    quantiles = distincts = counts = 0
    for seed in range(200):
        rng = random.Random(seed)
        n = rng.randint(1, 64)
        sigma = rng.randint(1, 16)
        alphabet = rng.sample(range(1000), sigma)
        s = [rng.choice(alphabet) for _ in range(n)]
        wt = make(s)
        for l in range(1, n + 1):  # noqa: E741
            for r in range(l, n + 1):
                expected = [naive_quantile(s, k, l, r) for k in range(1, r - l + 2)]
                got = [wt.quantile(k, l, r) for k in range(1, r - l + 2)]
                mismatches += got != expected
                quantiles += len(got)
                mismatches += [tuple(x) for x in wt.range_distinct(l, r)] != naive_distinct(s, l, r)
                distincts += 1
        for _ in range(50):
            l = rng.randint(1, n)  # noqa: E741
            r = rng.randint(l, n)
            lo = rng.randint(-5, 1005)
            hi = rng.randint(lo, 1010)
            mismatches += wt.range_count(l, r, lo, hi) != naive_range_count(s, l, r, lo, hi)
            counts += 1
    detail = f"{quantiles} quantile, {distincts} distinct, {counts} count queries, {mismatches} mismatches"
    return mismatches == 0 and counts == 10_000, detail


def test_criterion_1_figure1_trace(record):
    t0 = time.perf_counter()
    ok, detail = fig1_reproduced(fresh)
    elapsed = time.perf_counter() - t0
    record(1, "quantile trace on 6,2,0,7,9,3,1,8,5,4", ok and elapsed < 1.0, f"{detail}, {elapsed:.3f}s")


def test_criterion_2_abracadabra_root(record):
    t0 = time.perf_counter()
    ok, detail = abra_reproduced(fresh)
    elapsed = time.perf_counter() - t0
    record(2, "abracadabra root bits and left alphabet", ok and elapsed < 1.0, f"{detail}, {elapsed:.3f}s")


def test_criterion_3_oracle_equivalence(record):
    t0 = time.perf_counter()
    ok, detail = oracle_equivalence(fresh)
    elapsed = time.perf_counter() - t0
    record(3, "exhaustive oracle equivalence", ok and elapsed < 60, f"{detail}, {elapsed:.1f}s")


def test_criterion_4_space(record):
    t0 = time.perf_counter()
    n = 10**6
    wt = WaveletTree(random_sequence(n, 256, seed=4))
    assert wt.sigma == 256
    stored = wt.stored_bits()
    serialized = len(wt.to_bytes()) * 8
    in_memory = wt.size_in_bits()
    budget = 1.5 * n * 8
    elapsed = time.perf_counter() - t0
    ok = stored == n * 8 and serialized <= budget and in_memory <= budget and elapsed < 30
    record(4, "space: level bits = 8n, index <= 1.5 * 8n", ok,
           f"stored={stored}, serialized={serialized / (n * 8):.4f}x, with rank directories={in_memory / (n * 8):.4f}x, "
           f"{elapsed:.1f}s")


def test_criterion_5_query_time_scaling(record):
    n, queries = 10**6, 100_000
    means = {}
    for sigma in (16, 4096):
        wt = WaveletTree(random_sequence(n, sigma, seed=5))
        assert wt.sigma == sigma
        qs = random_queries(n, queries, seed=5)
        time_quantiles(wt, qs[:2000])  # warm-up
        means[sigma] = time_quantiles(wt, qs)
    ratio = means[4096] / means[16]
    record(5, "latency(sigma=4096) / latency(sigma=16) <= 4.5", ratio <= 4.5,
           f"{means[16]:.0f} ns vs {means[4096]:.0f} ns, ratio {ratio:.2f}")


def test_criterion_6_document_listing(record):
    t0 = time.perf_counter()
    mismatches = budget_violations = total_patterns = 0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, 101))
        total = int(rng.integers(k, 10_001))
        cuts = np.sort(rng.choice(np.arange(total + 1), size=k - 1, replace=True))
        alpha = int(rng.integers(2, 27))
        text = bytes((ord("a") + rng.integers(0, alpha, total)).astype(np.uint8))
        bounds = [0, *cuts.tolist(), total]
        docs = [text[a:b] for a, b in zip(bounds, bounds[1:])]
        idx = DocIndex(docs)
        for i in range(1000):
            if i % 4 == 3 or not text:
                pattern = bytes((ord("a") + rng.integers(0, alpha + 1, int(rng.integers(1, 17)))).astype(np.uint8))
            else:
                start = int(rng.integers(0, len(text)))
                pattern = text[start: start + int(rng.integers(1, 17))]
            before = idx.e_tree.descents
            got = idx.list_documents(pattern)
            used = idx.e_tree.descents - before
            mismatches += got != naive_doclist(docs, pattern)
            mismatches += len(idx.locate_pattern(pattern)) != sum(c for _, c in got)
            budget_violations += used > 2 * len(got) + 1
            total_patterns += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and budget_violations == 0 and elapsed < 60
    record(6, "document listing vs naive scan", ok,
           f"50 corpora, {total_patterns} patterns, {mismatches} mismatches, "
           f"{budget_violations} descent-budget violations, {elapsed:.1f}s")


def test_criterion_7_round_trip(record):
    t0 = time.perf_counter()
    results = [fig1_reproduced(reloaded), abra_reproduced(reloaded), oracle_equivalence(reloaded)]
    elapsed = time.perf_counter() - t0
    ok = all(r[0] for r in results) and elapsed < 60
    record(7, "criteria 1-3 on save/load round-tripped trees", ok,
           "; ".join(r[1] for r in results) + f", {elapsed:.1f}s")
