"""Tests for exactalg/matrix.py module."""

from fractions import Fraction

import numpy as np
import pytest

from torsioncert.core.errors import InvalidInputError
from torsioncert.exactalg.matrix import (
    ExactMatrix,
    Ring,
    charpoly,
    evaluate_polynomial,
    exact_matmul,
    hnf,
    hnf_transform_inverse,
    hnf_with_transform,
    integer_kernel,
    kernel_basis,
    rank_mod,
    rank_mod_generic,
)


def _arr(rows):
    return np.array(rows, dtype=object)


class TestExactMatrixBasics:
    """Construction, ring inference and immutability."""

    def test_integer_rows_infer_integer_ring(self):
        m = ExactMatrix.from_rows([[1, 2], [3, 4]])
        assert m.ring is Ring.INTEGER
        assert m.shape == (2, 2)

    def test_fractions_infer_rational_ring(self):
        m = ExactMatrix.from_rows([[Fraction(1, 2), 0], [0, 1]])
        assert m.ring is Ring.RATIONAL

    def test_entries_are_frozen(self):
        m = ExactMatrix.from_rows([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            m.entries[0, 0] = 7

    def test_prime_field_reduces_entries(self):
        m = ExactMatrix.from_rows([[5, -1]], ring=Ring.PRIME_FIELD, modulus=3)
        assert m.rows() == [[2, 2]]

    def test_prime_field_rejects_composite_modulus(self):
        with pytest.raises(InvalidInputError):
            ExactMatrix.from_rows([[1]], ring=Ring.PRIME_FIELD, modulus=4)


class TestExactArithmetic:
    """Determinant, inverse and solving over Q."""

    def test_det_of_integer_matrix(self):
        assert ExactMatrix.from_rows([[2, 1], [7, 4]]).det() == 1

    def test_det_of_singular_matrix(self):
        assert ExactMatrix.from_rows([[1, 2], [2, 4]]).det() == 0

    def test_inverse_times_matrix_is_identity(self):
        m = ExactMatrix.from_rows([[2, 1, 0], [0, 3, 1], [1, 0, 5]])
        product = m @ m.inverse()
        assert product == ExactMatrix.identity(3)

    def test_inverse_of_singular_matrix_raises(self):
        with pytest.raises(InvalidInputError):
            ExactMatrix.from_rows([[1, 2], [2, 4]]).inverse()

    def test_solve_returns_exact_fractions(self):
        solution = ExactMatrix.from_rows([[2, 0], [0, 3]]).solve([1, 1])
        assert solution == [Fraction(1, 2), Fraction(1, 3)]

    def test_rank_over_q(self):
        assert ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]]).rank() == 2

    def test_exact_matmul_handles_huge_entries(self):
        big = 2**70
        a = np.array([[big, 1]], dtype=object)
        b = np.array([[big], [1]], dtype=object)
        assert exact_matmul(a, b)[0, 0] == big * big + 1


class TestModularRank:
    """Ranks modulo a prime agree between the generic and bit-packed paths."""

    def test_rank_drops_mod_ell(self):
        m = ExactMatrix.from_rows([[1, 1], [1, 4]])
        assert m.rank() == 2
        assert rank_mod(m, 3) == 1

    def test_gf2_path_matches_generic(self):
        rng = np.random.default_rng(7)
        arr = rng.integers(0, 2, size=(40, 130))
        assert rank_mod(arr, 2) == rank_mod_generic(arr, 2)

    @pytest.mark.parametrize("ell", [2, 3, 5, 7])
    def test_rank_over_q_bounds_rank_mod_ell(self, ell):
        rng = np.random.default_rng(ell)
        for _ in range(40):
            rows, cols = (int(v) for v in rng.integers(1, 9, size=2))
            arr = rng.integers(-4, 5, size=(rows, cols))
            m = ExactMatrix.from_rows(arr.tolist())
            assert m.rank() >= rank_mod(m, ell)

    def test_rejects_composite_ell(self):
        with pytest.raises(InvalidInputError):
            rank_mod(np.eye(2, dtype=np.int64), 9)


class TestLattices:
    """Hermite normal form and kernels."""

    def test_hnf_is_upper_triangular_with_positive_pivots(self):
        h = hnf(ExactMatrix.from_rows([[2, 4], [3, 5]]))
        assert h.rows()[1][0] == 0
        assert h.rows()[0][0] > 0 and h.rows()[1][1] > 0
        assert abs(h.rows()[0][0] * h.rows()[1][1]) == 2

    def test_hnf_keeps_the_row_lattice(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            rows, cols = (int(v) for v in rng.integers(1, 7, size=2))
            m = rng.integers(-6, 7, size=(rows, cols)).tolist()
            h, u, v = hnf_transform_inverse(m, cols)
            # U M = H and V H = M, so both row lattices agree
            assert exact_matmul(_arr(u), _arr(m)).tolist() == h
            assert exact_matmul(_arr(v), _arr(h)).tolist() == m
            assert abs(ExactMatrix.from_rows(u).det()) == 1

    def test_hnf_is_canonical(self):
        m = [[4, 6, 2], [2, 3, 7], [6, 9, 9]]
        shuffled = [m[2], [a + b for a, b in zip(m[0], m[1])], m[1]]
        assert hnf_with_transform(m, 3)[0] == hnf_with_transform(shuffled, 3)[0]

    def test_integer_kernel_vectors_are_killed(self):
        m = ExactMatrix.from_rows([[1, 2], [2, 4], [3, 6]])
        kernel = integer_kernel(m)
        assert len(kernel) == 1
        assert all(v == 0 for v in m.apply(kernel[0]))
        assert sorted(abs(v) for v in kernel[0]) == [1, 2]

    def test_kernel_basis_dimension(self):
        m = ExactMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
        assert len(kernel_basis(m)) == 1


class TestCharpoly:
    """Characteristic polynomials and Cayley-Hamilton."""

    def test_companion_matrix(self):
        # x^2 - 3x + 2
        m = ExactMatrix.from_rows([[0, -2], [1, 3]])
        assert charpoly(m) == (1, -3, 2)

    def test_cayley_hamilton(self):
        m = ExactMatrix.from_rows([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
        assert evaluate_polynomial(charpoly(m), m).is_zero()
