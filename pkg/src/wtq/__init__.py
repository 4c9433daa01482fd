"""Succinct wavelet trees for range quantile, range counting and document listing."""

from .bitvector import BitVector
from .doclist import DocIndex, SAInterval, build_doc_index, load_index, suffix_array
from .wavelet_tree import (
    AlphabetMap,
    DistinctItem,
    EmptySequenceError,
    QuantileTraceStep,
    WaveletTree,
    build,
)

__all__ = [
    "AlphabetMap",
    "BitVector",
    "DistinctItem",
    "DocIndex",
    "EmptySequenceError",
    "QuantileTraceStep",
    "SAInterval",
    "WaveletTree",
    "build",
    "build_doc_index",
    "load_index",
    "suffix_array",
]

__version__ = "0.1.0"
