"""Tests for core/constants.py module."""

from torsioncert.core.constants import (
    BINARY_FIELD_MODULI,
    COND3_PUBLISHED,
    KNOWN_S_SETS,
    MD_TABLE,
    S7_UPPER_BOUND,
    T2_SEARCH_PRIMES,
    X_MU_EXCEPTIONS,
    cond3_passes_published,
    primes_up_to,
)
from torsioncert.exactalg.binaryfield import is_irreducible


class TestConstants:
    def test_md_table_covers_three_to_twenty_six(self):
        assert sorted(MD_TABLE) == list(range(3, 27))
        assert all(m % 2 == 1 for m in MD_TABLE.values())

    def test_known_sets_grow(self):
        for d in range(1, 6):
            assert KNOWN_S_SETS[d] <= KNOWN_S_SETS[d + 1]
        assert KNOWN_S_SETS[6] <= S7_UPPER_BOUND

    def test_xmu_exceptions_contain_known_sets(self):
        for d, primes in X_MU_EXCEPTIONS.items():
            if d in KNOWN_S_SETS:
                assert KNOWN_S_SETS[d] <= primes

    def test_t2_primes_are_odd(self):
        assert all(q % 2 == 1 for q in T2_SEARCH_PRIMES)

    def test_field_moduli_irreducible(self):
        for k, modulus in BINARY_FIELD_MODULI.items():
            assert modulus.bit_length() == k + 1
            assert is_irreducible(modulus)

    def test_primes_up_to(self):
        assert primes_up_to(13) == frozenset({2, 3, 5, 7, 11, 13})


def test_published_condition3_lookup():
    assert not cond3_passes_published(3, 13)
    assert cond3_passes_published(3, 11)
    assert not cond3_passes_published(6, 73)
    assert cond3_passes_published(7, 47)
    assert not cond3_passes_published(7, 113)
    assert set(COND3_PUBLISHED) == {3, 4, 5, 6}
