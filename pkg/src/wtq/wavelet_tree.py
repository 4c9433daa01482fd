"""Balanced wavelet tree over integer sequences.

Symbols are coordinate-compressed to codes ``0..sigma-1``.  A node covering
the code interval ``[a, b)`` sends its first ``ceil((b - a) / 2)`` codes to
the left child, so the abracadabra root splits ``{a, b, c} | {d, r}``.

Storage is levelwise: the bitstrings of all internal nodes at one depth are
concatenated into a single :class:`BitVector`.  Nodes are laid out left to
right and leaves drop out of the deeper levels, so the total number of
stored bits is the sum over symbols of frequency times leaf depth.  Node
offsets are derived from the bitvectors alone (see :func:`_layout`), which
is what lets the on-disk format keep raw bits only.

All public positions, ranks and range endpoints are 1-based and inclusive.
"""

from __future__ import annotations

import struct
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import BinaryIO, NamedTuple, Sequence

import numpy as np

from .bitvector import BitVector

__all__ = [
    "AlphabetMap",
    "DistinctItem",
    "EmptySequenceError",
    "QuantileTraceStep",
    "WaveletTree",
    "as_symbol_array",
    "build",
]

MAGIC = b"WTQ1"
VERSION = 1
U64_MAX = (1 << 64) - 1


class EmptySequenceError(ValueError):
    """raised when building from an empty sequence"""


class QuantileTraceStep(NamedTuple):
    k: int
    l: int  # noqa: E741
    r: int


class DistinctItem(NamedTuple):
    value: int
    multiplicity: int


def as_symbol_array(s) -> np.ndarray:
    """validate a sequence of unsigned integers and return it as uint64"""
    values = s if isinstance(s, np.ndarray) else list(s)
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional sequence")
    if arr.size == 0:
        raise EmptySequenceError("cannot build a wavelet tree from an empty sequence")
    if arr.dtype.kind == "u":
        return arr.astype(np.uint64, copy=False)
    if arr.dtype.kind == "i":
        if arr.min() < 0:
            raise ValueError("symbols must be non-negative integers")
        return arr.astype(np.uint64)
    if isinstance(values, list):
        # mixed huge ints come back as float or object arrays; check one by one
        for v in values:
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or not 0 <= v <= U64_MAX:
                raise ValueError(f"symbol {v!r} is not an unsigned 64-bit integer")
        return np.array([int(v) for v in values], dtype=np.uint64)
    raise ValueError(f"symbols must be unsigned integers, got dtype {arr.dtype}")


@dataclass(frozen=True)
class AlphabetMap:
    """sorted distinct symbols; codes are 1-based indices into ``distinct``"""

    distinct: tuple[int, ...]

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.distinct, self.distinct[1:])):
            raise ValueError("alphabet must be strictly increasing")

    @classmethod
    def from_symbols(cls, symbols: np.ndarray) -> "AlphabetMap":
        return cls(tuple(int(v) for v in np.unique(symbols)))

    @property
    def size(self) -> int:
        return len(self.distinct)

    def __len__(self) -> int:
        return len(self.distinct)

    def __contains__(self, value) -> bool:
        i = bisect_left(self.distinct, value)
        return i < len(self.distinct) and self.distinct[i] == value

    def code(self, value: int) -> int:
        i = bisect_left(self.distinct, value)
        if i == len(self.distinct) or self.distinct[i] != value:
            raise KeyError(value)
        return i + 1

    def decode(self, code: int) -> int:
        if not 1 <= code <= len(self.distinct):
            raise IndexError(f"code {code} outside 1..{len(self.distinct)}")
        return self.distinct[code - 1]


def _split(a: int, b: int) -> int:
    return a + (b - a + 1) // 2


def _layout(levels: Sequence[BitVector], n: int, sigma: int) -> list[dict[int, tuple[int, int]]]:
    """locate every internal node: per level, ``{first code: (offset, ones before offset)}``

    Walks the tree top-down using only the bitvectors, and checks that the
    level lengths agree with the node sizes they imply.
    """
    nodes = [(0, sigma, 0, n)] if sigma > 1 else []
    out = []
    for depth, bv in enumerate(levels):
        if sum(length for *_, length in nodes) != len(bv):
            raise ValueError(f"level {depth} holds {len(bv)} bits, tree shape implies otherwise")
        info = {}
        nxt = []
        pos = 0
        for a, b, start, length in nodes:
            base1 = bv.rank1(start)
            info[a] = (start, base1)
            ones = bv.rank1(start + length) - base1
            mid = _split(a, b)
            for ca, cb, clen in ((a, mid, length - ones), (mid, b, ones)):
                if clen == 0:
                    raise ValueError(f"empty node for codes [{ca}, {cb}) at depth {depth + 1}")
                if cb - ca >= 2:
                    nxt.append((ca, cb, pos, clen))
                    pos += clen
        out.append(info)
        nodes = nxt
    if nodes:
        raise ValueError("tree is deeper than the stored levels")
    return out


class WaveletTree:
    """range quantile, counting and distinct-reporting index over a sequence

    >>> wt = WaveletTree([6, 2, 0, 7, 9, 3, 1, 8, 5, 4])
    >>> wt.quantile(5, 3, 9)
    7
    >>> wt.range_count(3, 9, 3, 7)
    3
    """

    def __init__(self, s, block_size: int = 512):
        symbols = as_symbol_array(s)
        alphabet = AlphabetMap.from_symbols(symbols)
        codes = np.searchsorted(np.array(alphabet.distinct, dtype=np.uint64), symbols).astype(np.int64)
        self._assemble(len(symbols), alphabet, _build_levels(codes, alphabet.size, block_size))

    @classmethod
    def _from_parts(cls, n: int, alphabet: AlphabetMap, levels: list[BitVector]) -> "WaveletTree":
        self = cls.__new__(cls)
        self._assemble(n, alphabet, levels)
        return self

    def _assemble(self, n: int, alphabet: AlphabetMap, levels: list[BitVector]) -> None:
        self.n = n
        self.alphabet = alphabet
        self.levels = levels
        self.node_boundaries = _layout(levels, n, alphabet.size)
        # root-to-leaf descents performed so far; a statistic, not state
        self.descents = 0

    # -- shape -------------------------------------------------------------

    def __len__(self) -> int:
        return self.n

    @property
    def sigma(self) -> int:
        return self.alphabet.size

    @property
    def depth(self) -> int:
        return len(self.levels)

    def stored_bits(self) -> int:
        """bits held in the level bitstrings"""
        return sum(len(bv) for bv in self.levels)

    def size_in_bits(self) -> int:
        """in-memory footprint of levels plus rank directories (words padded)"""
        return sum(bv.size_in_bits() for bv in self.levels)

    def node_bits(self, depth: int, first_code: int) -> BitVector:
        """bitstring of the internal node at ``depth`` whose code range starts at ``first_code``"""
        info = self.node_boundaries[depth]
        if first_code not in info:
            raise KeyError(f"no internal node starting at code {first_code} on depth {depth}")
        starts = sorted(s for s, _ in info.values())
        start = info[first_code][0]
        nxt = starts.index(start) + 1
        end = starts[nxt] if nxt < len(starts) else len(self.levels[depth])
        bv = self.levels[depth]
        return BitVector([bv.access(p) for p in range(start + 1, end + 1)])

    def root_bits(self) -> BitVector:
        if not self.levels:
            return BitVector()
        return self.levels[0]

    def root_split(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """symbols sent to the root's left and right subtrees"""
        mid = _split(0, self.sigma)
        return self.alphabet.distinct[:mid], self.alphabet.distinct[mid:]

    def __repr__(self) -> str:
        return f"WaveletTree(n={self.n}, sigma={self.sigma}, depth={self.depth})"

    # -- validation --------------------------------------------------------

    def _check_position(self, i: int, lo: int = 1) -> None:
        if not lo <= i <= self.n:
            raise IndexError(f"position {i} outside {lo}..{self.n}")

    def _check_range(self, l: int, r: int) -> None:  # noqa: E741
        if not 1 <= l <= r <= self.n:
            raise IndexError(f"range [{l}, {r}] invalid for length {self.n}")

    def _code(self, c: int) -> int | None:
        d = self.alphabet.distinct
        i = bisect_left(d, c)
        return i if i < len(d) and d[i] == c else None

    # -- queries -----------------------------------------------------------

    def access(self, i: int) -> int:
        """the symbol at position i"""
        self._check_position(i)
        a, b = 0, self.sigma
        for bv, info in zip(self.levels, self.node_boundaries):
            start, base1 = info[a]
            p = start + i
            ones_through = bv._rank1_unchecked(p) - base1
            if bv.access(p):
                i = ones_through
                a = _split(a, b)
            else:
                i -= ones_through
                b = _split(a, b)
            if b - a < 2:
                break
        return self.alphabet.distinct[a]

    def __getitem__(self, i: int) -> int:
        return self.access(i)

    def to_list(self) -> list[int]:
        return [self.access(i) for i in range(1, self.n + 1)]

    def prefix_rank(self, c: int, i: int) -> int:
        """occurrences of symbol c among positions 1..i"""
        self._check_position(i, lo=0)
        code = self._code(c)
        if code is None or i == 0:
            return 0
        self.descents += 1
        return self._rank_code(code, i)

    def _rank_code(self, code: int, i: int) -> int:
        a, b = 0, self.sigma
        for bv, info in zip(self.levels, self.node_boundaries):
            if b - a < 2 or i == 0:
                break
            start, base1 = info[a]
            ones = bv._rank1_unchecked(start + i) - base1
            mid = _split(a, b)
            if code >= mid:
                i, a = ones, mid
            else:
                i, b = i - ones, mid
        return i

    def symbol_count(self, c: int, l: int, r: int) -> int:  # noqa: E741
        """occurrences of symbol c within positions l..r"""
        self._check_range(l, r)
        code = self._code(c)
        if code is None:
            return 0
        self.descents += 1
        # both prefix ranks tracked in one descent
        lo, hi = l - 1, r
        a, b = 0, self.sigma
        for bv, info in zip(self.levels, self.node_boundaries):
            if b - a < 2 or lo == hi:
                break
            start, base1 = info[a]
            ones_lo = bv._rank1_unchecked(start + lo) - base1
            ones_hi = bv._rank1_unchecked(start + hi) - base1
            mid = _split(a, b)
            if code >= mid:
                lo, hi, a = ones_lo, ones_hi, mid
            else:
                lo, hi, b = lo - ones_lo, hi - ones_hi, mid
        return hi - lo

    def select(self, c: int, j: int) -> int:
        """position of the j-th occurrence of symbol c"""
        code = self._code(c)
        if code is None:
            raise IndexError(f"symbol {c} does not occur")
        if j < 1:
            raise IndexError(f"select rank {j} must be >= 1")
        path = []
        a, b = 0, self.sigma
        i = self.n
        for bv, info in zip(self.levels, self.node_boundaries):
            if b - a < 2:
                break
            start, base1 = info[a]
            ones = bv._rank1_unchecked(start + i) - base1
            mid = _split(a, b)
            right = code >= mid
            path.append((bv, start, base1, right))
            if right:
                i, a = ones, mid
            else:
                i, b = i - ones, mid
        if j > i:
            raise IndexError(f"symbol {c} occurs {i} times, asked for occurrence {j}")
        for bv, start, base1, right in reversed(path):
            if right:
                j = bv.select1(base1 + j) - start
            else:
                j = bv.select0(start - base1 + j) - start
        return j

    def _check_quantile(self, k: int, l: int, r: int) -> None:  # noqa: E741
        self._check_range(l, r)
        if not 1 <= k <= r - l + 1:
            raise IndexError(f"rank {k} outside 1..{r - l + 1} for range [{l}, {r}]")

    def quantile(self, k: int, l: int, r: int) -> int:  # noqa: E741
        """k-th smallest value (1-based, with multiplicity) of s[l..r]"""
        self._check_quantile(k, l, r)
        self.descents += 1
        a, b = 0, self.sigma
        for bv, info in zip(self.levels, self.node_boundaries):
            start, base1 = info[a]
            ones_before = bv._rank1_unchecked(start + l - 1) - base1
            ones_through = bv._rank1_unchecked(start + r) - base1
            zeros_before = l - 1 - ones_before
            zeros = r - ones_through - zeros_before
            if zeros >= k:
                l, r = zeros_before + 1, r - ones_through
                b = _split(a, b)
            else:
                k -= zeros
                l, r = ones_before + 1, ones_through
                a = _split(a, b)
            if b - a < 2:
                break
        return self.alphabet.distinct[a]

    def median(self, l: int, r: int) -> int:  # noqa: E741
        """lower median, i.e. the quantile at rank ceil((r - l + 1) / 2)"""
        return self.quantile((r - l + 2) // 2, l, r)

    def quantile_trace(self, k: int, l: int, r: int) -> tuple[int, list[QuantileTraceStep]]:  # noqa: E741
        """quantile plus the (k, l, r) triple held at every node on the way down"""
        self._check_quantile(k, l, r)
        trace = [QuantileTraceStep(k, l, r)]
        a, b = 0, self.sigma
        for bv, info in zip(self.levels, self.node_boundaries):
            if b - a < 2:
                break
            start, base1 = info[a]
            ones_before = bv.rank1(start + l - 1) - base1
            ones_through = bv.rank1(start + r) - base1
            zeros_before = l - 1 - ones_before
            zeros = r - ones_through - zeros_before
            if zeros >= k:
                l, r = zeros_before + 1, r - ones_through
                b = _split(a, b)
            else:
                k -= zeros
                l, r = ones_before + 1, ones_through
                a = _split(a, b)
            trace.append(QuantileTraceStep(k, l, r))
        return self.alphabet.distinct[a], trace

    def _count_below(self, code: int, l: int, r: int) -> int:  # noqa: E741
        # elements of s[l..r] whose code is < `code`
        self.descents += 1
        total = 0
        a, b = 0, self.sigma
        levels = iter(zip(self.levels, self.node_boundaries))
        while l <= r:
            if code <= a:
                return total
            if code >= b:
                return total + r - l + 1
            bv, info = next(levels)
            start, base1 = info[a]
            ones_before = bv._rank1_unchecked(start + l - 1) - base1
            ones_through = bv._rank1_unchecked(start + r) - base1
            zeros_before = l - 1 - ones_before
            mid = _split(a, b)
            if code >= mid:
                total += r - ones_through - zeros_before
                l, r, a = ones_before + 1, ones_through, mid
            else:
                l, r, b = zeros_before + 1, r - ones_through, mid
        return total

    def range_count(self, l: int, r: int, lo: int, hi: int) -> int:  # noqa: E741
        """number of positions j in l..r with lo <= s[j] <= hi"""
        self._check_range(l, r)
        if lo > hi:
            raise ValueError(f"empty value interval: lo={lo} > hi={hi}")
        d = self.alphabet.distinct
        first, stop = bisect_left(d, lo), bisect_right(d, hi)
        if first >= stop:
            return 0
        return self._count_below(stop, l, r) - self._count_below(first, l, r)

    def range_distinct(self, l: int, r: int) -> list[DistinctItem]:  # noqa: E741
        """distinct values of s[l..r] in increasing order, with multiplicities

        The i-th distinct value is the quantile at rank 1 + m_1 + ... + m_{i-1},
        and each multiplicity m_i is a symbol count over the same range.
        """
        self._check_range(l, r)
        out = []
        k = 1
        size = r - l + 1
        while k <= size:
            value = self.quantile(k, l, r)
            m = self.symbol_count(value, l, r)
            out.append(DistinctItem(value, m))
            k += m
        return out

    # -- serialization -----------------------------------------------------

    def to_bytes(self) -> bytes:
        parts = [MAGIC, struct.pack("<IQQQ", VERSION, self.n, self.sigma, self.depth)]
        parts.append(np.array(self.alphabet.distinct, dtype="<u8").tobytes())
        for bv in self.levels:
            parts.append(struct.pack("<Q", len(bv)))
            parts.append(bv.words.tobytes() if np.little_endian else np.asarray(bv.words, "<u8").tobytes())
        return b"".join(parts)

    def save(self, f: str | BinaryIO) -> None:
        if isinstance(f, (str, bytes)) or hasattr(f, "__fspath__"):
            with open(f, "wb") as fh:
                fh.write(self.to_bytes())
        else:
            f.write(self.to_bytes())

    @classmethod
    def from_bytes(cls, data: bytes) -> "WaveletTree":
        tree, end = _read_tree(memoryview(data), 0)
        if end != len(data):
            raise ValueError(f"{len(data) - end} trailing bytes after wavelet tree")
        return tree

    @classmethod
    def load(cls, f: str | BinaryIO) -> "WaveletTree":
        if isinstance(f, (str, bytes)) or hasattr(f, "__fspath__"):
            with open(f, "rb") as fh:
                return cls.from_bytes(fh.read())
        return cls.from_bytes(f.read())


def _build_levels(codes: np.ndarray, sigma: int, block_size: int) -> list[BitVector]:
    """one stable partition pass per level"""
    levels = []
    lo = np.zeros(codes.size, dtype=np.int64)
    hi = np.full(codes.size, sigma, dtype=np.int64)
    cur = codes if sigma > 1 else codes[:0]
    while cur.size:
        mid = lo + (hi - lo + 1) // 2
        bits = cur >= mid
        levels.append(BitVector(bits, block_size=block_size))
        child_lo = np.where(bits, mid, lo)
        child_hi = np.where(bits, hi, mid)
        order = np.argsort(child_lo, kind="stable")
        keep = (child_hi[order] - child_lo[order]) >= 2
        order = order[keep]
        cur, lo, hi = cur[order], child_lo[order], child_hi[order]
    return levels


def _read_tree(buf: memoryview, off: int) -> tuple[WaveletTree, int]:
    """parse one WTQ1 tree record starting at ``off``; returns the tree and the end offset"""

    def take(nbytes):
        nonlocal off
        if off + nbytes > len(buf):
            raise ValueError("truncated index file")
        chunk = buf[off: off + nbytes]
        off += nbytes
        return chunk

    if bytes(take(4)) != MAGIC:
        raise ValueError("not a WTQ1 index (bad magic)")
    version, n, sigma, depth = struct.unpack("<IQQQ", take(28))
    if version != VERSION:
        raise ValueError(f"unsupported tree record version {version}")
    if n == 0 or sigma == 0 or sigma > n:
        raise ValueError(f"inconsistent header: n={n}, sigma={sigma}")
    expected_depth = (sigma - 1).bit_length()
    if depth != expected_depth:
        raise ValueError(f"depth {depth} does not match sigma {sigma}")
    distinct = tuple(int(v) for v in np.frombuffer(take(8 * sigma), dtype="<u8"))
    alphabet = AlphabetMap(distinct)
    levels = []
    for _ in range(depth):
        (nbits,) = struct.unpack("<Q", take(8))
        nwords = -(-nbits // 64)
        words = np.frombuffer(take(8 * nwords), dtype="<u8")
        levels.append(BitVector.from_words(words, nbits))
    return WaveletTree._from_parts(n, alphabet, levels), off


def build(s, block_size: int = 512) -> WaveletTree:
    return WaveletTree(s, block_size=block_size)
