"""Tests for oesterle/rmatrix.py."""

import pytest

from torsioncert.core.constants import MD_TABLE
from torsioncert.core.errors import InvalidInputError
from torsioncert.oesterle.intersection import Ire_prime_dot_path
from torsioncert.oesterle.rmatrix import (
    EpsTable,
    asymptotic_gate,
    check_Md,
    eps,
    find_Md,
    r_matrix,
    units,
    verify_md_table,
)


class TestEps:
    @pytest.mark.parametrize("M", [3, 29, 45, 127])
    def test_complement(self, M):
        table = EpsTable(M)
        assert all(table(n) + table(M - n) == 1 for n in units(M))

    def test_half_range(self):
        assert eps(3, 7) == 0
        assert eps(4, 7) == 1
        assert eps(10, 7) == 0

    def test_even_modulus_rejected(self):
        with pytest.raises(InvalidInputError):
            EpsTable(10)

    def test_defined_on_every_residue(self):
        table = EpsTable(9)
        assert table(0) == 0
        assert table(3) == 0
        assert table(6) == 1
        assert all(table(n) == eps(n, 9) for n in range(-20, 20))


class TestRMatrix:
    def test_entries_small(self):
        m = r_matrix(5, 29, 3)
        assert m.entries.shape == (5, 28)
        assert set(m.entries.flat) <= {-1, 0, 1}

    def test_entry_formula(self):
        M, u = 29, 7
        m = r_matrix(3, M, u)
        for r in range(1, 4):
            for a in units(M):
                assert m.entry(r, a) == eps(r * a, M) - eps(r * u * pow(a, -1, M), M)

    def test_rejects_non_unit(self):
        with pytest.raises(InvalidInputError):
            r_matrix(3, 15, 5)

    def test_rejects_even_modulus(self):
        with pytest.raises(InvalidInputError):
            check_Md(3, 28)

    def test_first_row_is_a_path_intersection(self):
        """L_1 e . {0, a/M} computed from the I'_r closed form, with pu = 1 mod M."""
        p, M = 59, 29
        u = pow(p, -1, M)
        m = r_matrix(3, M, u)
        for a in units(M):
            value = Ire_prime_dot_path(p, 2, a, M) - 2 * Ire_prime_dot_path(p, 1, a, M)
            assert value == m.entry(1, a)


class TestMdTable:
    def test_table_anchors(self):
        assert check_Md(3, 29)
        assert check_Md(26, 127)

    def test_degree_one_modulus_three_fails(self):
        assert not check_Md(1, 3)

    def test_small_range(self):
        rows = verify_md_table(3, 7)
        assert [d for d, _, _ in rows] == [3, 4, 5, 6, 7]
        assert all(passes for _, _, passes in rows)

    def test_range_outside_table(self):
        with pytest.raises(InvalidInputError):
            verify_md_table(2, 5)
        with pytest.raises(InvalidInputError):
            verify_md_table(10, 9)

    @pytest.mark.parametrize("M", [9, 15, 21, 45])
    def test_composite_modulus(self, M):
        for d in (2, 3, 4):
            expected = all(r_matrix(d, M, u).rank(3) == d for u in units(M))
            assert check_Md(d, M) == expected

    def test_modulus_not_above_degree(self):
        assert not check_Md(3, 3)
        assert not check_Md(5, 5)
        assert r_matrix(3, 3, 1).entries.shape == (3, 2)

    def test_search_never_exceeds_table(self):
        found = find_Md(3)
        assert found is not None and found <= MD_TABLE[3]
        assert check_Md(3, found)

    @pytest.mark.slow
    def test_full_table(self):
        assert all(passes for _, _, passes in verify_md_table())


class TestGate:
    def test_values(self):
        assert asymptotic_gate(26)
        assert not asymptotic_gate(25)
        assert asymptotic_gate(100)

    def test_rejects_zero(self):
        with pytest.raises(InvalidInputError):
            asymptotic_gate(0)
