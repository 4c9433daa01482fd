"""Document listing over a concatenated corpus.

Each document is followed by a 0 sentinel byte and the results are
concatenated into one text.  A suffix array over the text locates the block
of suffixes starting with a pattern; the document array ``E`` (the document
owning each suffix, in suffix-array order) is stored as a wavelet tree, and
listing the documents that contain the pattern is a distinct-values query
on ``E`` over that block.  No range-minimum structure is involved.

The suffix array is a plain array searched by binary search, so locating a
pattern costs O(|P| log n) rather than the O(|P|) a compressed index gives.
"""

from __future__ import annotations

import struct
from array import array
from bisect import bisect_left, bisect_right
from typing import BinaryIO, NamedTuple, Sequence

import numpy as np

from .wavelet_tree import MAGIC, WaveletTree, _read_tree

__all__ = ["DocIndex", "SAInterval", "build_doc_index", "suffix_array", "SENTINEL"]

SENTINEL = 0
DOCLIST_VERSION = 2


class SAInterval(NamedTuple):
    """inclusive 1-based block of the suffix array; empty when lo > hi"""

    lo: int
    hi: int

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    @property
    def empty(self) -> bool:
        return self.lo > self.hi


def suffix_array(text: bytes | np.ndarray) -> np.ndarray:
    """0-based suffix array by prefix doubling; O(n log^2 n) worst case

    A suffix that is a proper prefix of another sorts first, as with plain
    ``bytes`` comparison.
    """
    t = np.frombuffer(bytes(text), dtype=np.uint8) if not isinstance(text, np.ndarray) else text
    n = t.size
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = t.astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    sorted_rank = rank[sa]
    rank[sa] = np.concatenate(([0], np.cumsum(sorted_rank[1:] != sorted_rank[:-1])))
    h = 1
    while rank.max() < n - 1:
        second = np.full(n, 0, dtype=np.int64)
        # shift by one so "past the end" (0) sorts below every real rank
        second[: n - h] = rank[h:] + 1
        key = rank * (n + 1) + second
        sa = np.argsort(key, kind="stable")
        k = key[sa]
        rank[sa] = np.concatenate(([0], np.cumsum(k[1:] != k[:-1])))
        h *= 2
    return sa


class DocIndex:
    """suffix array + document array wavelet tree over a document collection"""

    def __init__(self, documents: Sequence[bytes]):
        docs = [bytes(d) for d in documents]
        if not docs:
            raise ValueError("at least one document is required")
        for i, d in enumerate(docs, 1):
            if SENTINEL in d:
                raise ValueError(f"document {i} contains the sentinel byte 0")
        starts = np.zeros(len(docs), dtype=np.int64)
        np.cumsum([len(d) + 1 for d in docs[:-1]], out=starts[1:])
        text = b"".join(d + b"\0" for d in docs)
        sa = suffix_array(text) + 1
        self._assemble(text, starts, sa, WaveletTree(_document_array(starts, sa)))

    @classmethod
    def _from_parts(cls, text, starts, sa, e_tree) -> "DocIndex":
        self = cls.__new__(cls)
        self._assemble(text, starts, sa, e_tree)
        return self

    def _assemble(self, text: bytes, starts: np.ndarray, sa: np.ndarray, e_tree: WaveletTree) -> None:
        self.text = text
        self.doc_boundaries = [int(x) for x in starts]
        self.e_tree = e_tree
        self._sa = array("Q", np.asarray(sa, dtype=np.uint64).tobytes())

    @property
    def n(self) -> int:
        return len(self.text)

    @property
    def doc_count(self) -> int:
        return len(self.doc_boundaries)

    @property
    def sa(self) -> np.ndarray:
        """suffix array as 1-based text positions"""
        return np.frombuffer(self._sa, dtype=np.uint64).astype(np.int64)

    def document_array(self) -> list[int]:
        return self.e_tree.to_list()

    def documents(self) -> list[bytes]:
        return self.text.split(b"\0")[:-1]

    def __repr__(self) -> str:
        return f"DocIndex(doc_count={self.doc_count}, n={self.n})"

    @staticmethod
    def _check_pattern(pattern: bytes) -> bytes:
        if isinstance(pattern, str):
            pattern = pattern.encode()
        pattern = bytes(pattern)
        if not pattern:
            raise ValueError("pattern must be non-empty")
        if SENTINEL in pattern:
            raise ValueError("pattern contains the sentinel byte 0")
        return pattern

    def locate_pattern(self, pattern: bytes) -> SAInterval:
        """maximal block of the suffix array whose suffixes start with pattern"""
        p = self._check_pattern(pattern)
        m = len(p)
        text, sa = self.text, self._sa

        def prefix(i):
            start = sa[i] - 1
            return text[start: start + m]

        lo = bisect_left(range(len(sa)), p, key=prefix)
        hi = bisect_right(range(len(sa)), p, lo=lo, key=prefix)
        return SAInterval(lo + 1, hi)

    def list_documents(self, pattern: bytes) -> list[tuple[int, int]]:
        """(document id, occurrence count) for every document containing pattern"""
        iv = self.locate_pattern(pattern)
        if iv.empty:
            return []
        return [(item.value, item.multiplicity) for item in self.e_tree.range_distinct(iv.lo, iv.hi)]

    # -- serialization -----------------------------------------------------

    def to_bytes(self) -> bytes:
        parts = [MAGIC, struct.pack("<IQ", DOCLIST_VERSION, self.doc_count)]
        parts.append(np.array(self.doc_boundaries, dtype="<u8").tobytes())
        parts.append(struct.pack("<Q", self.n))
        parts.append(self.text)
        parts.append(b"\0" * (-self.n % 8))
        parts.append(np.asarray(self._sa, dtype="<u8").tobytes())
        parts.append(self.e_tree.to_bytes())
        return b"".join(parts)

    def save(self, f: str | BinaryIO) -> None:
        if isinstance(f, (str, bytes)) or hasattr(f, "__fspath__"):
            with open(f, "wb") as fh:
                fh.write(self.to_bytes())
        else:
            f.write(self.to_bytes())

    @classmethod
    def from_bytes(cls, data: bytes) -> "DocIndex":
        buf = memoryview(data)
        if bytes(buf[:4]) != MAGIC or len(buf) < 16:
            raise ValueError("not a WTQ1 index (bad magic)")
        version, k = struct.unpack_from("<IQ", buf, 4)
        if version != DOCLIST_VERSION:
            raise ValueError(f"not a document index (version {version})")
        off = 16
        try:
            starts = np.frombuffer(buf, dtype="<u8", count=k, offset=off).astype(np.int64)
            off += 8 * k
            (n,) = struct.unpack_from("<Q", buf, off)
            off += 8
            text = bytes(buf[off: off + n])
            off += n + (-n % 8)
            sa = np.frombuffer(buf, dtype="<u8", count=n, offset=off).astype(np.int64)
            off += 8 * n
        except (ValueError, struct.error) as exc:
            raise ValueError("truncated index file") from exc
        if len(text) != n:
            raise ValueError("truncated index file")
        e_tree, end = _read_tree(buf, off)
        if end != len(buf):
            raise ValueError(f"{len(buf) - end} trailing bytes after document index")
        if e_tree.n != n:
            raise ValueError("document array length does not match text length")
        return cls._from_parts(text, starts, sa, e_tree)

    @classmethod
    def load(cls, f: str | BinaryIO) -> "DocIndex":
        if isinstance(f, (str, bytes)) or hasattr(f, "__fspath__"):
            with open(f, "rb") as fh:
                return cls.from_bytes(fh.read())
        return cls.from_bytes(f.read())


def _document_array(starts: np.ndarray, sa: np.ndarray) -> np.ndarray:
    # a sentinel belongs to the document it terminates
    return np.searchsorted(starts, sa - 1, side="right").astype(np.uint64)


def build_doc_index(documents: Sequence[bytes]) -> DocIndex:
    return DocIndex(documents)


def load_index(f) -> WaveletTree | DocIndex:
    """load either kind of WTQ1 file"""
    if isinstance(f, (str, bytes)) or hasattr(f, "__fspath__"):
        with open(f, "rb") as fh:
            data = fh.read()
    else:
        data = f.read()
    if len(data) >= 8 and data[:4] == MAGIC and struct.unpack_from("<I", data, 4)[0] == DOCLIST_VERSION:
        return DocIndex.from_bytes(data)
    return WaveletTree.from_bytes(data)
