"""Packed bitvectors with a two-level rank directory.

Bits are stored little-endian in 64-bit words: bit ``p`` (0-based) lives in
word ``p >> 6`` at offset ``p & 63``.  Positions exposed by the public
methods are 1-based, and ``rank*(0)`` is the empty prefix.

The directory holds one cumulative 64-bit count per block (``block_size``
bits, 512 by default) plus one 16-bit in-block count per word, so rank is
two table lookups and a single popcount.  Overhead at the default block
size is 64/512 + 16/64 = 37.5% of the raw bits.
"""

from __future__ import annotations

from array import array
from typing import Iterable

import numpy as np

__all__ = ["BitVector"]

WORD_BITS = 64
DEFAULT_BLOCK_SIZE = 512


def _pack(bits: np.ndarray) -> np.ndarray:
    """pack a bool array into little-endian uint64 words (tail zero-padded)"""
    nbytes = -(-bits.size // 8)
    packed = np.packbits(bits, bitorder="little")
    padded = np.zeros(-(-nbytes // 8) * 8, dtype=np.uint8)
    padded[:nbytes] = packed
    return padded.view("<u8")


class BitVector:
    """immutable bit sequence answering rank in O(1) and select in O(log n)"""

    __slots__ = ("length", "block_size", "words", "blocks", "subcounts", "_ones")

    def __init__(self, bits: Iterable[bool] | np.ndarray = (), block_size: int = DEFAULT_BLOCK_SIZE):
        if isinstance(bits, str):
            if set(bits) - {"0", "1"}:
                raise ValueError("bit strings may only contain '0' and '1'")
            bits = [c == "1" for c in bits]
        arr = np.asarray(bits if isinstance(bits, np.ndarray) else list(bits), dtype=bool).ravel()
        self._init_words(_pack(arr), arr.size, block_size)

    @classmethod
    def from_words(cls, words, length: int, block_size: int = DEFAULT_BLOCK_SIZE) -> "BitVector":
        """rebuild from raw packed words; the rank directory is recomputed"""
        words = np.asarray(words, dtype="<u8")
        if words.size != -(-length // WORD_BITS):
            raise ValueError(f"expected {-(-length // WORD_BITS)} words for {length} bits, got {words.size}")
        tail = length % WORD_BITS
        if tail and int(words[-1]) >> tail:
            raise ValueError("bits beyond length must be zero")
        self = cls.__new__(cls)
        self._init_words(words, length, block_size)
        return self

    def _init_words(self, words: np.ndarray, length: int, block_size: int) -> None:
        if block_size < WORD_BITS or block_size > 1 << 16 or block_size & (block_size - 1):
            raise ValueError("block_size must be a power of two in [64, 65536]")
        self.length = length
        self.block_size = block_size
        per_block = block_size // WORD_BITS

        counts = np.bitwise_count(words).astype(np.int64)
        nblocks = -(-words.size // per_block)
        padded = np.zeros(nblocks * per_block, dtype=np.int64)
        padded[: counts.size] = counts
        by_block = padded.reshape(nblocks, per_block)
        # ones strictly before each word, relative to its block start
        within = np.cumsum(by_block, axis=1) - by_block
        blocks = np.zeros(nblocks + 1, dtype=np.uint64)
        np.cumsum(by_block.sum(axis=1), out=blocks[1:])

        self.words = array("Q", words.astype("<u8").tobytes())
        self.blocks = array("Q", blocks.tobytes())
        self.subcounts = array("H", within.ravel()[: counts.size].astype(np.uint16).tobytes())
        self._ones = int(blocks[-1])

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return self.length

    @property
    def ones(self) -> int:
        return self._ones

    def rank1(self, i: int) -> int:
        """number of 1s among bits 1..i"""
        if not 0 <= i <= self.length:
            raise IndexError(f"rank position {i} outside 0..{self.length}")
        return self._rank1_unchecked(i)

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def _rank1_unchecked(self, i: int) -> int:
        # hot path for the wavelet tree; caller guarantees 0 <= i <= length
        w = i >> 6
        off = i & 63
        if off:
            return (self.blocks[i // self.block_size] + self.subcounts[w]
                    + (self.words[w] & ((1 << off) - 1)).bit_count())
        if w < len(self.subcounts):
            return self.blocks[i // self.block_size] + self.subcounts[w]
        return self._ones

    def access(self, i: int) -> int:
        """the i-th bit (1-based)"""
        if not 1 <= i <= self.length:
            raise IndexError(f"access position {i} outside 1..{self.length}")
        p = i - 1
        return (self.words[p >> 6] >> (p & 63)) & 1

    def __getitem__(self, i: int) -> int:
        return self.access(i)

    def select1(self, j: int) -> int:
        """smallest position i with rank1(i) == j"""
        if not 1 <= j <= self._ones:
            raise IndexError(f"select1 rank {j} outside 1..{self._ones}")
        return self._select(j, ones=True)

    def select0(self, j: int) -> int:
        """smallest position i with rank0(i) == j"""
        zeros = self.length - self._ones
        if not 1 <= j <= zeros:
            raise IndexError(f"select0 rank {j} outside 1..{zeros}")
        return self._select(j, ones=False)

    def _select(self, j: int, ones: bool) -> int:
        bs = self.block_size
        per_block = bs // WORD_BITS

        def before_block(b):
            return self.blocks[b] if ones else b * bs - self.blocks[b]

        # last block whose preceding count is < j
        lo, hi = 0, len(self.blocks) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if before_block(mid) < j:
                lo = mid
            else:
                hi = mid
        block = lo
        need = j - before_block(block)

        first = block * per_block
        last = min(first + per_block, len(self.words))
        lo, hi = first, last
        while hi - lo > 1:
            mid = (lo + hi) // 2
            c = self.subcounts[mid] if ones else (mid - first) * WORD_BITS - self.subcounts[mid]
            if c < need:
                lo = mid
            else:
                hi = mid
        w = lo
        need -= self.subcounts[w] if ones else (w - first) * WORD_BITS - self.subcounts[w]
        word = self.words[w] if ones else ~self.words[w] & 0xFFFFFFFFFFFFFFFF
        for off in range(WORD_BITS):
            if (word >> off) & 1:
                need -= 1
                if need == 0:
                    return w * WORD_BITS + off + 1
        raise AssertionError("rank directory inconsistent")  # pragma: no cover

    # -- introspection -----------------------------------------------------

    def to_bits(self) -> list[int]:
        return [(self.words[p >> 6] >> (p & 63)) & 1 for p in range(self.length)]

    def __str__(self) -> str:
        return "".join(map(str, self.to_bits()))

    def __repr__(self) -> str:
        shown = str(self) if self.length <= 64 else str(self)[:61] + "..."
        return f"BitVector({shown!r}, length={self.length})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and self.words == other.words

    def __hash__(self):
        return hash((self.length, bytes(self.words)))

    def raw_bits(self) -> int:
        """bits occupied by the packed words"""
        return len(self.words) * WORD_BITS

    def directory_bits(self) -> int:
        """bits occupied by the rank directory"""
        return len(self.blocks) * 64 + len(self.subcounts) * 16

    def size_in_bits(self) -> int:
        return self.raw_bits() + self.directory_bits()
