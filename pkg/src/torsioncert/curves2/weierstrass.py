"""Elliptic curves in general Weierstrass form over F_{2^k}.

y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6. The usual integer coefficients
of the b-invariants and of the group law are reduced through their parity, so
the characteristic-free formulas apply unchanged.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from torsioncert.core.errors import InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.core.validators import InputValidator
from torsioncert.exactalg.binaryfield import BinaryField, BinaryFieldElt

logger = get_logger(__name__)

# Exhaustive enumeration of all a-invariants is limited to F_{2^k}, k <= this.
BRUTEFORCE_MAX_DEGREE = 4


@dataclass(frozen=True)
class WeierstrassCurve:
    """The curve with a-invariants (a1, a2, a3, a4, a6) over one binary field."""

    a1: BinaryFieldElt
    a2: BinaryFieldElt
    a3: BinaryFieldElt
    a4: BinaryFieldElt
    a6: BinaryFieldElt

    def __post_init__(self) -> None:
        fields = {a.field for a in self.coefficients}
        if len(fields) != 1:
            raise InvalidInputError("a-invariants from different fields")

    @classmethod
    def from_values(
        cls, fld: BinaryField, values: Tuple[int, int, int, int, int]
    ) -> "WeierstrassCurve":
        return cls(*(fld(v) for v in values))

    @property
    def coefficients(self) -> Tuple[BinaryFieldElt, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def field(self) -> BinaryField:
        return self.a1.field

    @property
    def b_invariants(self) -> Tuple[BinaryFieldElt, ...]:
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return (b2, b4, b6, b8)

    @cached_property
    def discriminant(self) -> BinaryFieldElt:
        b2, b4, b6, b8 = self.b_invariants
        return -(b2 * b2 * b8) - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def is_smooth(self) -> bool:
        return not self.discriminant.is_zero()

    @property
    def j_invariant(self) -> BinaryFieldElt:
        """c4^3 / Delta.

        Raises:
            InvalidInputError: If the curve is singular
        """
        if not self.is_smooth():
            raise InvalidInputError(f"{self!r} is singular")
        b2, b4, _, _ = self.b_invariants
        c4 = b2 * b2 - 24 * b4
        return c4 * c4 * c4 / self.discriminant

    def contains(self, x: BinaryFieldElt, y: BinaryFieldElt) -> bool:
        a1, a2, a3, a4, a6 = self.coefficients
        lhs = y * y + a1 * x * y + a3 * y
        rhs = x * x * x + a2 * x * x + a4 * x + a6
        return lhs == rhs

    def point(self, x: int, y: int) -> "WeierstrassPoint":
        """The affine point (x, y) given by field values.

        Raises:
            InvalidInputError: If (x, y) is not on the curve
        """
        fld = self.field
        return WeierstrassPoint(self, fld(x), fld(y))

    @property
    def infinity(self) -> "WeierstrassPoint":
        return WeierstrassPoint(self, None, None)

    def points(self) -> Iterator["WeierstrassPoint"]:
        """All rational points, infinity first."""
        yield self.infinity
        for x in self.field.elements():
            for y in self.field.elements():
                if self.contains(x, y):
                    yield WeierstrassPoint(self, x, y)

    def point_count(self) -> int:
        """#E(F_{2^k}), including the point at infinity."""
        a1, a2, a3, a4, a6 = (a.value for a in self.coefficients)
        return int(_affine_counts(self.field, a1, a2, a3, a4)[a6]) + 1

    def change_coordinates(
        self, u: BinaryFieldElt, r: BinaryFieldElt, s: BinaryFieldElt, t: BinaryFieldElt
    ) -> "WeierstrassCurve":
        """The curve obtained from x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.

        Raises:
            InvalidInputError: If u = 0
        """
        if u.is_zero():
            raise InvalidInputError("u must be nonzero")
        a1, a2, a3, a4, a6 = self.coefficients
        ui = u.inverse()
        new_a1 = (a1 + 2 * s) * ui
        new_a2 = (a2 - s * a1 + 3 * r - s * s) * ui**2
        new_a3 = (a3 + r * a1 + 2 * t) * ui**3
        new_a4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * ui**4
        new_a6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * ui**6
        return WeierstrassCurve(new_a1, new_a2, new_a3, new_a4, new_a6)

    def __repr__(self) -> str:
        values = ", ".join(str(a.value) for a in self.coefficients)
        return f"WeierstrassCurve([{values}] over F_{self.field.order})"


@dataclass(frozen=True)
class WeierstrassPoint:
    """A rational point of a WeierstrassCurve; x = y = None is the point at infinity."""

    curve: WeierstrassCurve
    x: Optional[BinaryFieldElt]
    y: Optional[BinaryFieldElt]

    def __post_init__(self) -> None:
        if (self.x is None) != (self.y is None):
            raise InvalidInputError("a point needs both coordinates or neither")
        if self.x is not None and self.y is not None and not self.curve.contains(self.x, self.y):
            raise InvalidInputError(f"({self.x.value}, {self.y.value}) is not on {self.curve!r}")

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def coordinates(self) -> Tuple[BinaryFieldElt, BinaryFieldElt]:
        if self.x is None or self.y is None:
            raise InvalidInputError("the point at infinity has no affine coordinates")
        return self.x, self.y

    def __neg__(self) -> "WeierstrassPoint":
        if self.is_infinity:
            return self
        x, y = self.coordinates()
        c = self.curve
        return WeierstrassPoint(c, x, -y - c.a1 * x - c.a3)

    def __add__(self, other: "WeierstrassPoint") -> "WeierstrassPoint":
        if other.curve != self.curve:
            raise InvalidInputError("points on different curves")
        if self.is_infinity:
            return other
        if other.is_infinity:
            return self
        c = self.curve
        x1, y1 = self.coordinates()
        x2, y2 = other.coordinates()
        if x1 == x2:
            if (y1 + y2 + c.a1 * x2 + c.a3).is_zero():
                return c.infinity
            denominator = 2 * y1 + c.a1 * x1 + c.a3
            slope = (3 * x1 * x1 + 2 * c.a2 * x1 + c.a4 - c.a1 * y1) / denominator
            offset = (-(x1 * x1 * x1) + c.a4 * x1 + 2 * c.a6 - c.a3 * y1) / denominator
        else:
            slope = (y2 - y1) / (x2 - x1)
            offset = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = slope * slope + c.a1 * slope - c.a2 - x1 - x2
        y3 = -(slope + c.a1) * x3 - offset - c.a3
        return WeierstrassPoint(c, x3, y3)

    def __sub__(self, other: "WeierstrassPoint") -> "WeierstrassPoint":
        return self + (-other)

    def __rmul__(self, n: int) -> "WeierstrassPoint":
        """n P by double-and-add."""
        if n < 0:
            return (-n) * (-self)
        result = self.curve.infinity
        addend = self
        while n:
            if n & 1:
                result = result + addend
            addend = addend + addend
            n >>= 1
        return result

    def map_to(
        self,
        target: WeierstrassCurve,
        u: BinaryFieldElt,
        r: BinaryFieldElt,
        s: BinaryFieldElt,
        t: BinaryFieldElt,
    ) -> "WeierstrassPoint":
        """Image on ``target`` = curve.change_coordinates(u, r, s, t)."""
        if self.is_infinity:
            return target.infinity
        x, y = self.coordinates()
        ui = u.inverse()
        x_new = (x - r) * ui**2
        y_new = (y - s * (x - r) - t) * ui**3
        return WeierstrassPoint(target, x_new, y_new)


def point_order(point: WeierstrassPoint, bound: int) -> Optional[int]:
    """Least n >= 1 with nP = oo, or None if it exceeds ``bound``."""
    current = point
    for n in range(1, bound + 1):
        if current.is_infinity:
            return n
        current = current + point
    return None


# ----------------------------------------------------------------------
# Exhaustive counts
# ----------------------------------------------------------------------


def _affine_counts(fld: BinaryField, a1: int, a2: int, a3: int, a4: int) -> np.ndarray:
    """Affine point counts of the curves (a1, a2, a3, a4, a6), indexed by a6."""
    mul = fld.mul_array
    elements = np.arange(fld.order, dtype=np.int64)
    squares = mul[elements, elements]
    cubes = mul[squares, elements]
    xy = mul[elements[:, None], elements[None, :]]
    lhs = squares[None, :] ^ mul[a1][xy] ^ mul[a3][elements][None, :]
    rhs = cubes ^ mul[a2][squares] ^ mul[a4][elements]
    return np.bincount((lhs ^ rhs[:, None]).ravel(), minlength=fld.order)


def _discriminants(fld: BinaryField, a1: int, a2: int, a3: int, a4: int) -> np.ndarray:
    """Delta of (a1, a2, a3, a4, a6) for every a6: a1^6 a6 + K in characteristic 2."""
    curve = WeierstrassCurve.from_values(fld, (a1, a2, a3, a4, 0))
    a1_sixth = (curve.a1**6).value
    return fld.mul_array[a1_sixth] ^ curve.discriminant.value


def smooth_curve_orders(k: int) -> Dict[int, int]:
    """{#E(F_{2^k}): number of smooth (a1, ..., a6) with that order}.

    Raises:
        InvalidInputError: If k exceeds BRUTEFORCE_MAX_DEGREE
    """
    InputValidator.require(InputValidator.validate_range(k, 1, BRUTEFORCE_MAX_DEGREE, "k"))
    fld = BinaryField(k)
    tally: Dict[int, int] = {}
    for a1, a2, a3, a4 in product(range(fld.order), repeat=4):
        counts = _affine_counts(fld, a1, a2, a3, a4) + 1
        smooth = _discriminants(fld, a1, a2, a3, a4) != 0
        orders, multiplicity = np.unique(counts[smooth], return_counts=True)
        for order, times in zip(orders.tolist(), multiplicity.tolist()):
            tally[order] = tally.get(order, 0) + times
    logger.debug("F_%s: %s distinct group orders", fld.order, len(tally))
    return tally


def y1_nonempty_bruteforce(p: int, k: int) -> bool:
    """Whether some smooth curve over F_{2^k} has a rational point of order p.

    Raises:
        InvalidInputError: If p is not prime or k exceeds BRUTEFORCE_MAX_DEGREE
    """
    InputValidator.require(InputValidator.validate_prime(p, "p"))
    return any(order % p == 0 for order in smooth_curve_orders(k))


def hasse_holds(order: int, q: int) -> bool:
    """|order - q - 1| <= 2 sqrt(q), squared."""
    trace = q + 1 - order
    return trace * trace <= 4 * q
