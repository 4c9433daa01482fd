import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wtq import BitVector

ROOT = "00100010010"


def scan_rank1(bits, i):
    return sum(bits[:i])


def test_empty():
    bv = BitVector([])
    assert len(bv) == 0
    assert bv.rank1(0) == 0
    assert bv.rank0(0) == 0
    with pytest.raises(IndexError):
        bv.rank1(1)
    with pytest.raises(IndexError):
        bv.select1(1)


def test_root_string_examples():
    bv = BitVector(ROOT)
    assert len(bv) == 11
    assert bv.rank1(0) == 0
    assert bv.rank1(11) == 3
    assert bv.rank1(5) == 1
    assert bv.rank0(11) == 8
    assert bv.rank0(4) == 3
    assert bv.access(3) == 1
    assert bv.access(4) == 0
    assert [bv.select1(j) for j in (1, 2, 3)] == [3, 7, 10]
    assert bv.select0(1) == 1
    with pytest.raises(IndexError):
        bv.select1(4)
    with pytest.raises(IndexError):
        bv.select1(0)
    assert str(bv) == ROOT


def test_all_ones_and_zeros():
    assert BitVector([1] * 8).select1(5) == 5
    zeros = BitVector([0] * 100)
    assert all(zeros.access(i) == 0 for i in range(1, 101))
    assert zeros.select0(100) == 100


def test_out_of_range():
    bv = BitVector(ROOT)
    for bad in (-1, 12):
        with pytest.raises(IndexError):
            bv.rank1(bad)
    for bad in (0, 12):
        with pytest.raises(IndexError):
            bv.access(bad)


def test_rejects_bad_strings_and_block_sizes():
    with pytest.raises(ValueError):
        BitVector("0120")
    with pytest.raises(ValueError):
        BitVector(ROOT, block_size=100)
    with pytest.raises(ValueError):
        BitVector(ROOT, block_size=32)


def test_thousand_random_bits_rank():
    rng = random.Random(7)
    bits = [rng.randint(0, 1) for _ in range(1000)]
    bv = BitVector(bits)
    prefix = np.concatenate(([0], np.cumsum(bits)))
    assert [bv.rank1(i) for i in range(1001)] == prefix.tolist()


def check_all(bits, bv):
    n = len(bits)
    ones = [i + 1 for i, b in enumerate(bits) if b]
    zeros = [i + 1 for i, b in enumerate(bits) if not b]
    running = 0
    for i in range(n + 1):
        if i:
            running += bits[i - 1]
            assert bv.access(i) == bits[i - 1]
            assert bv.rank1(i) - bv.rank1(i - 1) == bv.access(i)
        assert bv.rank1(i) == running
        assert bv.rank0(i) + bv.rank1(i) == i
    for j, pos in enumerate(ones, 1):
        assert bv.select1(j) == pos
        assert bv.rank1(pos) == j and bv.access(pos) == 1
    for j, pos in enumerate(zeros, 1):
        assert bv.select0(j) == pos
    assert bv.rank1(n) == sum(bits) == bv.ones


@pytest.mark.parametrize("block_size", [64, 512, 4096])
def test_hundred_random_vectors(block_size):
    rng = random.Random(block_size)
    for _ in range(100):
        n = rng.randint(0, 2000)
        density = rng.random()
        bits = [int(rng.random() < density) for _ in range(n)]
        check_all(bits, BitVector(bits, block_size=block_size))


@given(st.lists(st.integers(0, 1), max_size=700))
def test_properties(bits):
    check_all(bits, BitVector(bits))


def test_directory_invariants():
    rng = np.random.default_rng(3)
    bits = rng.random(5000) < 0.3
    bv = BitVector(bits, block_size=512)
    for t in range(len(bv.blocks)):
        assert bv.blocks[t] == int(bits[: t * 512].sum())
    # tail of the last word stays clear
    assert bv.words[-1] >> (5000 % 64) == 0
    assert bv.rank1(5000) == sum(int(w).bit_count() for w in bv.words)
    assert bv.directory_bits() <= 0.5 * bv.raw_bits() + 64


def test_from_words_round_trip():
    bv = BitVector(ROOT)
    again = BitVector.from_words(np.asarray(bv.words), 11)
    assert again == bv
    assert again.rank1(11) == 3
    with pytest.raises(ValueError):
        BitVector.from_words(np.array([1 << 20], dtype=np.uint64), 11)
    with pytest.raises(ValueError):
        BitVector.from_words(np.array([0, 0], dtype=np.uint64), 11)
