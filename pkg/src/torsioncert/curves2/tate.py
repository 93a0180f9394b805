"""Tate normal form E_{b,c}: y^2 + (1 - c) xy - by = x^3 - bx^2 over F_{2^k}.

Every pair (E, P) with P of order at least 4 is isomorphic to exactly one
(E_{b,c}, (0, 0)). In characteristic 2 the discriminant is
b^3 (c^4 + c^3 + c^2 + b + c) and the j-invariant is (c + 1)^12 / Delta.
"""

from dataclasses import dataclass
from typing import Tuple

from torsioncert.core.errors import InternalConsistencyError, InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.curves2.weierstrass import WeierstrassCurve, WeierstrassPoint, point_order
from torsioncert.exactalg.binaryfield import BinaryFieldElt

logger = get_logger(__name__)


def tate_discriminant(b: BinaryFieldElt, c: BinaryFieldElt) -> BinaryFieldElt:
    return b * b * b * (c**4 + c**3 + c**2 + b + c)


def j_invariant(b: BinaryFieldElt, c: BinaryFieldElt) -> BinaryFieldElt:
    """(c + 1)^12 / Delta_{b,c}; zero exactly when c = 1.

    Raises:
        InvalidInputError: If Delta_{b,c} = 0
    """
    delta = tate_discriminant(b, c)
    if delta.is_zero():
        raise InvalidInputError(f"E_(b={b.value}, c={c.value}) is singular")
    return (c + 1) ** 12 / delta


@dataclass(frozen=True)
class TateCurve:
    """E_{b,c} with its marked point (0, 0)."""

    b: BinaryFieldElt
    c: BinaryFieldElt

    def __post_init__(self) -> None:
        if self.b.field != self.c.field:
            raise InvalidInputError("b and c from different fields")
        if self.discriminant.is_zero():
            raise InvalidInputError(f"E_(b={self.b.value}, c={self.c.value}) is singular")

    @property
    def discriminant(self) -> BinaryFieldElt:
        return tate_discriminant(self.b, self.c)

    @property
    def j_invariant(self) -> BinaryFieldElt:
        return j_invariant(self.b, self.c)

    @property
    def weierstrass(self) -> WeierstrassCurve:
        zero = self.b.field.zero
        return WeierstrassCurve(1 - self.c, -self.b, -self.b, zero, zero)

    @property
    def marked_point(self) -> WeierstrassPoint:
        zero = self.b.field.zero
        return WeierstrassPoint(self.weierstrass, zero, zero)

    def key(self) -> Tuple[int, int]:
        return (self.b.value, self.c.value)


def _check(condition: bool, step: str) -> None:
    if not condition:
        raise InternalConsistencyError(f"Tate normalisation failed at {step}")


def tate_normalize(point: WeierstrassPoint) -> TateCurve:
    """The unique E_{b,c} with (E_{b,c}, (0,0)) isomorphic to (point.curve, point).

    Raises:
        InvalidInputError: If the point has order at most 3
    """
    order = point_order(point, 3)
    if order is not None:
        raise InvalidInputError(f"Tate normal form needs order >= 4, point has order {order}")
    curve = point.curve
    fld = curve.field
    zero, one = fld.zero, fld.one
    x0, y0 = point.coordinates()

    # Move the point to (0, 0).
    moved = curve.change_coordinates(one, x0, zero, y0)
    origin = point.map_to(moved, one, x0, zero, y0)
    _check(origin.coordinates() == (zero, zero) and moved.a6.is_zero(), "translation")

    # Horizontal tangent at the origin; a3 != 0 since the point is not 2-torsion.
    s = moved.a4 / moved.a3
    flat = moved.change_coordinates(one, zero, s, zero)
    origin = origin.map_to(flat, one, zero, s, zero)
    _check(flat.a4.is_zero() and flat.a6.is_zero(), "tangent")

    # Rescale so that a2 = a3; a2 != 0 since the origin is not a flex.
    u = flat.a3 / flat.a2
    scaled = flat.change_coordinates(u, zero, zero, zero)
    origin = origin.map_to(scaled, u, zero, zero, zero)
    _check(scaled.a2 == scaled.a3 and origin.coordinates() == (zero, zero), "scaling")

    normal = TateCurve(-scaled.a3, 1 - scaled.a1)
    _check(normal.weierstrass == scaled, "re-substitution")
    return normal
