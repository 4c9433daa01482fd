"""Brute-force reference answers.

Deliberately written without touching the succinct structures, so that a
bug in the index cannot be mirrored here.  Positions are 1-based and
inclusive, like everywhere else in the package.
"""

from __future__ import annotations

from collections import Counter


def _check_range(s, l, r):  # noqa: E741
    if not 1 <= l <= r <= len(s):
        raise IndexError(f"range [{l}, {r}] invalid for length {len(s)}")


def naive_quantile(s, k: int, l: int, r: int):  # noqa: E741
    _check_range(s, l, r)
    if not 1 <= k <= r - l + 1:
        raise IndexError(f"rank {k} outside 1..{r - l + 1}")
    return sorted(s[l - 1: r])[k - 1]


def naive_distinct(s, l: int, r: int) -> list[tuple[int, int]]:  # noqa: E741
    _check_range(s, l, r)
    return sorted(Counter(s[l - 1: r]).items())


def naive_range_count(s, l: int, r: int, lo, hi) -> int:  # noqa: E741
    _check_range(s, l, r)
    if lo > hi:
        raise ValueError(f"lo={lo} > hi={hi}")
    return sum(1 for v in s[l - 1: r] if lo <= v <= hi)


def _count_overlapping(doc: bytes, pattern: bytes) -> int:
    count = 0
    at = doc.find(pattern)
    while at != -1:
        count += 1
        at = doc.find(pattern, at + 1)
    return count


def naive_doclist(documents, pattern) -> list[tuple[int, int]]:
    """(1-based document id, overlapping occurrence count) per matching document"""
    if isinstance(pattern, str):
        pattern = pattern.encode()
    if not pattern:
        raise ValueError("pattern must be non-empty")
    if 0 in pattern:
        raise ValueError("pattern contains the sentinel byte 0")
    out = []
    for i, doc in enumerate(documents, 1):
        if isinstance(doc, str):
            doc = doc.encode()
        c = _count_overlapping(doc, pattern)
        if c:
            out.append((i, c))
    return out
