"""Tests for exactalg/binaryfield.py module."""

import pytest

from torsioncert.core.constants import ALTERNATE_F64_MODULUS
from torsioncert.core.errors import InvalidInputError
from torsioncert.exactalg.binaryfield import (
    BinaryField,
    clmul,
    embedding_table,
    evaluate_f2_polynomial,
    find_generator,
    is_irreducible,
    poly_mod,
)


@pytest.fixture(scope="module")
def f64():
    return BinaryField(6)


class TestPolynomials:
    def test_clmul_is_carry_free(self):
        # (x + 1)^2 = x^2 + 1 over F_2
        assert clmul(0b11, 0b11) == 0b101

    def test_poly_mod(self):
        assert poly_mod(0b1000, 0b1011) == 0b011

    def test_irreducibility(self):
        assert is_irreducible(0b111)
        assert not is_irreducible(0b101)
        assert is_irreducible(0b1000011)


class TestBinaryField:
    """Field axioms on small binary fields."""

    def test_rejects_reducible_modulus(self):
        with pytest.raises(InvalidInputError):
            BinaryField(2, 0b101)

    def test_rejects_degree_out_of_range(self):
        with pytest.raises(InvalidInputError):
            BinaryField(9)

    def test_every_nonzero_element_is_invertible(self, f64):
        for a in f64.nonzero():
            assert (a * a.inverse()).is_one()

    def test_characteristic_two(self, f64):
        for a in f64.elements():
            assert (a + a).is_zero()
            assert -a == a

    def test_integers_embed_by_parity(self, f64):
        a = f64(0b101)
        assert 3 * a == a
        assert (2 * a).is_zero()
        assert (1 - a) == a + f64.one

    def test_frobenius_orbit_lengths_divide_degree(self, f64):
        for a in f64.nonzero():
            assert 6 % len(a.frobenius_orbit()) == 0

    def test_sqrt_inverts_squaring(self, f64):
        for a in f64.elements():
            assert (a * a).sqrt() == a

    def test_minimal_polynomial_vanishes(self, f64):
        for a in f64.elements():
            assert evaluate_f2_polynomial(a.minimal_polynomial(), a).is_zero()

    def test_trace_is_balanced(self, f64):
        assert sum(a.trace() for a in f64.elements()) == 32

    def test_generator_has_full_order(self):
        fld = BinaryField(4)
        generator = find_generator(fld)
        assert generator is not None
        assert generator.multiplicative_order() == 15

    def test_mul_array_matches_mul(self):
        fld = BinaryField(3)
        table = fld.mul_array
        for a in range(8):
            for b in range(8):
                assert table[a, b] == fld.mul(a, b)


class TestEmbedding:
    def test_embedding_is_a_field_isomorphism(self, f64):
        other = BinaryField(6, ALTERNATE_F64_MODULUS)
        table = embedding_table(f64, other)
        assert sorted(table.values()) == list(range(64))
        for a in range(1, 64, 5):
            for b in range(0, 64, 7):
                product = (f64(a) * f64(b)).value
                assert table[product] == (other(table[a]) * other(table[b])).value
