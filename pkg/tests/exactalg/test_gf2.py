"""Tests for exactalg/gf2.py and exactalg/primefield.py."""

import numpy as np
import pytest

from torsioncert.exactalg.gf2 import (
    gf2_left_kernel,
    gf2_rank,
    min_dependency_weight,
    pack_rows,
    unpack_rows,
)
from torsioncert.exactalg.matrix import rank_mod_generic
from torsioncert.exactalg.primefield import PrimeFieldElt, left_kernel_mod


class TestPacking:
    def test_unpack_inverts_pack(self):
        rng = np.random.default_rng(1)
        bits = rng.integers(0, 2, size=(5, 70)).astype(np.uint8)
        assert np.array_equal(unpack_rows(pack_rows(bits), 70), bits)

    def test_pack_width_is_whole_words(self):
        assert pack_rows(np.ones((3, 65), dtype=np.uint8)).shape == (3, 2)


class TestGf2Elimination:
    """Rank and kernels of bit-packed matrices."""

    def test_rank_of_identity(self):
        assert gf2_rank(pack_rows(np.eye(10, dtype=np.uint8)), 10) == 10

    def test_duplicate_rows_drop_rank(self):
        bits = np.array([[1, 0, 1], [1, 0, 1], [0, 1, 1]], dtype=np.uint8)
        assert gf2_rank(pack_rows(bits), 3) == 2

    def test_random_rank_matches_generic(self):
        rng = np.random.default_rng(11)
        bits = rng.integers(0, 2, size=(30, 20))
        assert gf2_rank(pack_rows(bits), 20) == rank_mod_generic(bits, 2)

    def test_rank_matches_generic_on_many_shapes(self):
        rng = np.random.default_rng(500)
        for _ in range(500):
            rows, cols = (int(v) for v in rng.integers(1, 65, size=2))
            # sparse rows give rank-deficient cases as well as full ones
            density = rng.choice([0.05, 0.5])
            bits = (rng.random((rows, cols)) < density).astype(np.uint8)
            assert gf2_rank(pack_rows(bits), cols) == rank_mod_generic(bits, 2), (rows, cols)

    def test_left_kernel_vectors_kill_matrix(self):
        bits = np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0], [1, 1, 0]], dtype=np.uint8)
        kernel = gf2_left_kernel(bits)
        assert kernel.shape == (2, 4)
        assert not ((kernel.astype(np.int64) @ bits) % 2).any()

    def test_min_dependency_weight(self):
        bits = np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0], [1, 1, 0]], dtype=np.uint8)
        # rows 2 and 3 coincide
        assert min_dependency_weight(gf2_left_kernel(bits)) == 2

    def test_min_dependency_weight_of_trivial_kernel(self):
        assert min_dependency_weight(np.zeros((0, 4), dtype=np.uint8)) is None


class TestPrimeField:
    def test_arithmetic_wraps(self):
        a = PrimeFieldElt(5, 7)
        assert (a + 4).value == 2
        assert (a * a).value == 4
        assert (a / a).value == 1

    def test_inverse_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            PrimeFieldElt(0, 5).inverse()

    def test_euler_criterion(self):
        squares = {x * x % 11 for x in range(1, 11)}
        for v in range(1, 11):
            assert PrimeFieldElt(v, 11).is_square() == (v in squares)

    def test_mixing_fields_raises(self):
        with pytest.raises(ValueError):
            PrimeFieldElt(1, 5) + PrimeFieldElt(1, 7)

    def test_left_kernel_mod(self):
        arr = np.array([[1, 2], [2, 4], [0, 1]])
        kernel = left_kernel_mod(arr, 3)
        assert kernel.shape == (1, 3)
        assert not ((kernel @ arr) % 3).any()
