"""Tests for pointcount/waterhouse.py."""

import pytest
from sympy import primerange

from torsioncert.core.constants import COND3_PUBLISHED, cond3_passes_published
from torsioncert.core.errors import InvalidInputError
from torsioncert.curves2.weierstrass import smooth_curve_orders
from torsioncert.pointcount.waterhouse import (
    apriori_bound_holds,
    condition3_exceptions,
    condition3_holds,
    cusp_field_condition,
    ordinary_orders,
    supersingular_only,
    waterhouse_conditions,
    waterhouse_empty,
)


class TestWaterhouse:
    def test_seventy_three(self):
        assert all(waterhouse_empty(73, 2, d) for d in range(1, 6))
        assert not waterhouse_empty(73, 2, 6)

    def test_seventy_three_is_supersingular_only(self):
        assert supersingular_only(73, 2, 6)
        assert not waterhouse_conditions(73, 2, 6)[3]

    def test_thirteen_over_f8(self):
        assert not waterhouse_empty(13, 2, 3)

    def test_ordinary_orders_over_f2(self):
        assert ordinary_orders(2, 2) == [2, 4]

    @pytest.mark.parametrize("p", [2, 3])
    def test_small_p_rejected(self, p):
        with pytest.raises(InvalidInputError, match="false for p = 2 or 3"):
            waterhouse_empty(p, 5, 1)

    def test_ell_equal_p_rejected(self):
        with pytest.raises(InvalidInputError):
            waterhouse_empty(5, 5, 1)


class TestCuspField:
    def test_values(self):
        assert all(cusp_field_condition(73, 2, d) for d in range(1, 7))
        assert not cusp_field_condition(7, 2, 3)
        assert not cusp_field_condition(5, 2, 4)


class TestCondition3:
    def test_degree_six(self):
        assert condition3_exceptions(6, p_max=300, p_min=23) == [29, 31, 37, 41, 73]

    def test_degree_four(self):
        assert condition3_exceptions(4, p_max=300, p_min=19) == []

    def test_degree_three_includes_eleven(self):
        assert condition3_exceptions(3, p_max=300, p_min=11) == [13]

    @pytest.mark.parametrize("d", sorted(COND3_PUBLISHED))
    def test_published_lists(self, d):
        bound, exceptions = COND3_PUBLISHED[d]
        assert condition3_exceptions(d, p_max=300, p_min=bound) == sorted(exceptions)

    def test_degree_seven_complement(self):
        failing = set(condition3_exceptions(7, p_max=300))
        for p in primerange(5, 300):
            assert (p not in failing) == cond3_passes_published(7, int(p)), p

    @pytest.mark.parametrize("d", [3, 4, 5, 6, 7])
    def test_apriori_bound(self, d):
        sample = [int(p) for p in primerange(5, 2000) if apriori_bound_holds(int(p), 2, d)][:50]
        assert sample
        assert all(condition3_holds(p, d) for p in sample)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_agrees_with_exhaustive_enumeration(k):
    orders = smooth_curve_orders(k)
    for p in primerange(5, 32):
        nonempty = any(order % p == 0 for order in orders)
        assert waterhouse_empty(int(p), 2, k) == (not nonempty), (p, k)
