"""Tests for curves2/weierstrass.py and curves2/tate.py."""

from itertools import product

import pytest

from torsioncert.core.errors import InvalidInputError
from torsioncert.curves2.tate import TateCurve, j_invariant, tate_normalize
from torsioncert.curves2.weierstrass import (
    BRUTEFORCE_MAX_DEGREE,
    WeierstrassCurve,
    hasse_holds,
    point_order,
    smooth_curve_orders,
    y1_nonempty_bruteforce,
)
from torsioncert.exactalg.binaryfield import BinaryField


@pytest.fixture(scope="module")
def f16():
    return BinaryField(4)


@pytest.fixture(scope="module")
def curve_f8():
    """y^2 + xy = x^3 + 1 over F_8."""
    return WeierstrassCurve.from_values(BinaryField(3), (1, 0, 0, 0, 1))


class TestCurve:
    def test_smooth(self, curve_f8):
        assert curve_f8.is_smooth()

    def test_singular_curve_has_no_j(self):
        singular = WeierstrassCurve.from_values(BinaryField(2), (0, 0, 0, 0, 0))
        assert not singular.is_smooth()
        with pytest.raises(InvalidInputError):
            singular.j_invariant

    def test_point_count_matches_enumeration(self, curve_f8):
        assert curve_f8.point_count() == len(list(curve_f8.points()))

    def test_off_curve_point_rejected(self, curve_f8):
        bad = next(
            (x, y) for x, y in product(range(8), repeat=2) if not curve_f8.contains(
                curve_f8.field(x), curve_f8.field(y)
            )
        )
        with pytest.raises(InvalidInputError):
            curve_f8.point(*bad)


class TestGroupLaw:
    def test_inverse(self, curve_f8):
        for point in curve_f8.points():
            assert (point + (-point)).is_infinity

    def test_associative(self, curve_f8):
        points = list(curve_f8.points())[:6]
        for p, q, r in product(points, repeat=3):
            assert (p + q) + r == p + (q + r)

    def test_group_order_kills_points(self, curve_f8):
        n = curve_f8.point_count()
        for point in curve_f8.points():
            assert (n * point).is_infinity
            order = point_order(point, n)
            assert order is not None and n % order == 0

    def test_negative_multiple(self, curve_f8):
        point = list(curve_f8.points())[1]
        assert (-3) * point == -(3 * point)


class TestCounts:
    def test_smooth_total_over_f2(self):
        orders = smooth_curve_orders(1)
        assert set(orders) == {1, 2, 3, 4, 5}
        assert sum(orders.values()) == 2**5 - 2**4

    def test_hasse(self):
        for k in (1, 2, 3):
            assert all(hasse_holds(order, 2**k) for order in smooth_curve_orders(k))

    def test_degree_cap(self):
        with pytest.raises(InvalidInputError):
            smooth_curve_orders(BRUTEFORCE_MAX_DEGREE + 1)

    def test_thirteen_over_f8(self):
        assert y1_nonempty_bruteforce(13, 3)
        assert not y1_nonempty_bruteforce(17, 3)


class TestTateNormalForm:
    def test_j_invariant_agrees(self, f16):
        for b, c in product(f16.nonzero(), f16.elements()):
            try:
                curve = TateCurve(b, c)
            except InvalidInputError:
                continue
            assert curve.j_invariant == curve.weierstrass.j_invariant

    def test_supersingular_family(self, f16):
        b = f16.x
        assert j_invariant(b, f16.one).is_zero()

    def test_idempotent(self, f16):
        for b, c in product(list(f16.nonzero())[:5], f16.elements()):
            try:
                curve = TateCurve(b, c)
            except InvalidInputError:
                continue
            assert tate_normalize(curve.marked_point).key() == curve.key()

    def test_invariant_under_change_of_coordinates(self, f16):
        curve = TateCurve(f16(3), f16(5))
        u, r, s, t = f16(7), f16(2), f16(9), f16(4)
        moved = curve.weierstrass.change_coordinates(u, r, s, t)
        image = curve.marked_point.map_to(moved, u, r, s, t)
        assert tate_normalize(image).key() == curve.key()

    def test_small_order_rejected(self, curve_f8):
        two_torsion = next(
            point for point in curve_f8.points()
            if not point.is_infinity and (2 * point).is_infinity
        )
        with pytest.raises(InvalidInputError):
            tate_normalize(two_torsion)

    def test_singular_tate_curve(self, f16):
        with pytest.raises(InvalidInputError):
            TateCurve(f16.zero, f16.one)
