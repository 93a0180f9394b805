"""Finite fields F_{2^k}, k <= 8, in polynomial basis.

An element is an int whose bit i is the coefficient of x^i. Addition is XOR;
multiplication is carry-less multiplication reduced by the field modulus.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Union

import numpy as np

from torsioncert.core.constants import BINARY_FIELD_MODULI
from torsioncert.core.errors import InvalidInputError


def poly_degree(poly: int) -> int:
    """Degree of a GF(2)[x] polynomial encoded as a bit mask (-1 for zero)."""
    return poly.bit_length() - 1


def poly_mod(a: int, m: int) -> int:
    """Remainder of a by m in GF(2)[x]."""
    dm = poly_degree(m)
    while a and poly_degree(a) >= dm:
        a ^= m << (poly_degree(a) - dm)
    return a


def clmul(a: int, b: int) -> int:
    """Carry-less product in GF(2)[x]."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly_degree(poly)
    if deg < 1:
        return False
    for divisor in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(poly, divisor) == 0:
            return False
    return True


@dataclass(frozen=True)
class BinaryField:
    """F_{2^k} presented as GF(2)[x]/(modulus).

    Args:
        k: Extension degree, 1 <= k <= 8
        modulus: Irreducible degree-k polynomial as a bit mask; defaults to the
            conventional entry of BINARY_FIELD_MODULI
    """

    k: int
    modulus: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.k <= 8:
            raise InvalidInputError(f"binary field degree must be in 1..8, got {self.k}")
        if self.modulus == 0:
            object.__setattr__(self, "modulus", BINARY_FIELD_MODULI[self.k])
        if poly_degree(self.modulus) != self.k:
            raise InvalidInputError(f"modulus {bin(self.modulus)} does not have degree {self.k}")
        if not is_irreducible(self.modulus):
            raise InvalidInputError(f"modulus {bin(self.modulus)} is reducible over F_2")

    @property
    def order(self) -> int:
        return 1 << self.k

    def __call__(self, value: int) -> "BinaryFieldElt":
        return BinaryFieldElt(value, self)

    @property
    def zero(self) -> "BinaryFieldElt":
        return BinaryFieldElt(0, self)

    @property
    def one(self) -> "BinaryFieldElt":
        return BinaryFieldElt(1, self)

    @property
    def x(self) -> "BinaryFieldElt":
        """The class of x, a root of the modulus."""
        return BinaryFieldElt(2 if self.k > 1 else 1, self)

    def elements(self) -> Iterator["BinaryFieldElt"]:
        for value in range(self.order):
            yield BinaryFieldElt(value, self)

    def nonzero(self) -> Iterator["BinaryFieldElt"]:
        for value in range(1, self.order):
            yield BinaryFieldElt(value, self)

    @cached_property
    def _mul_table(self) -> List[List[int]]:
        n = self.order
        return [[poly_mod(clmul(a, b), self.modulus) for b in range(n)] for a in range(n)]

    def mul(self, a: int, b: int) -> int:
        return self._mul_table[a][b]

    @cached_property
    def mul_array(self) -> np.ndarray:
        """The multiplication table as an (order x order) int64 array."""
        return np.array(self._mul_table, dtype=np.int64)

    def __repr__(self) -> str:
        return f"BinaryField(k={self.k}, modulus={bin(self.modulus)})"


@dataclass(frozen=True)
class BinaryFieldElt:
    """Element of a BinaryField; ``value`` bit i is the coefficient of x^i."""

    value: int
    field: BinaryField

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", poly_mod(int(self.value), self.field.modulus))

    def _coerce(self, other: Union["BinaryFieldElt", int]) -> int:
        if isinstance(other, BinaryFieldElt):
            if other.field != self.field:
                raise InvalidInputError("mixing elements of different binary fields")
            return other.value
        # Integers embed through their parity.
        return int(other) & 1

    def __add__(self, other: Union["BinaryFieldElt", int]) -> "BinaryFieldElt":
        return BinaryFieldElt(self.value ^ self._coerce(other), self.field)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> "BinaryFieldElt":
        return self

    def __mul__(self, other: Union["BinaryFieldElt", int]) -> "BinaryFieldElt":
        return BinaryFieldElt(self.field.mul(self.value, self._coerce(other)), self.field)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BinaryFieldElt":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "BinaryFieldElt":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self ** (self.field.order - 2)

    def __truediv__(self, other: Union["BinaryFieldElt", int]) -> "BinaryFieldElt":
        divisor = other if isinstance(other, BinaryFieldElt) else BinaryFieldElt(
            self._coerce(other), self.field
        )
        return self * divisor.inverse()

    def __bool__(self) -> bool:
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def is_one(self) -> bool:
        return self.value == 1

    def frobenius(self, times: int = 1) -> "BinaryFieldElt":
        """The image under x -> x^2 applied ``times`` times."""
        out = self
        for _ in range(times % self.field.k if self.field.k else 0):
            out = out * out
        return out

    def trace(self) -> int:
        """Absolute trace to F_2, as 0 or 1."""
        acc = self
        total = self
        for _ in range(self.field.k - 1):
            acc = acc * acc
            total = total + acc
        if total.value not in (0, 1):
            raise ArithmeticError("trace left F_2")
        return total.value

    def multiplicative_order(self) -> int:
        if self.value == 0:
            raise InvalidInputError("0 has no multiplicative order")
        n = 1
        power = self
        while not power.is_one():
            power = power * self
            n += 1
        return n

    def frobenius_orbit(self) -> List["BinaryFieldElt"]:
        """Distinct conjugates self, self^2, self^4, ... in order of appearance."""
        orbit = [self]
        current = self * self
        while current != self:
            orbit.append(current)
            current = current * current
        return orbit

    def sqrt(self) -> "BinaryFieldElt":
        """Unique square root (Frobenius is bijective)."""
        return self.frobenius(self.field.k - 1)

    def minimal_polynomial(self) -> int:
        """Minimal polynomial over F_2 as a bit mask."""
        coeffs: List[BinaryFieldElt] = [self.field.one]
        for conjugate in self.frobenius_orbit():
            # multiply the running product by (X + conjugate)
            shifted = [self.field.zero] + coeffs
            for i, c in enumerate(coeffs):
                shifted[i] = shifted[i] + c * conjugate
            coeffs = shifted
        mask = 0
        for i, c in enumerate(coeffs):
            if c.value not in (0, 1):
                raise ArithmeticError("minimal polynomial left F_2[x]")
            mask |= c.value << i
        return mask

    def __repr__(self) -> str:
        return f"BinaryFieldElt({bin(self.value)}, k={self.field.k})"


def evaluate_f2_polynomial(poly: int, point: BinaryFieldElt) -> BinaryFieldElt:
    """Evaluate a GF(2)[x] polynomial (bit mask) at a field element by Horner."""
    result = point.field.zero
    for i in range(poly_degree(poly), -1, -1):
        result = result * point + ((poly >> i) & 1)
    return result


def find_generator(fld: BinaryField) -> Optional[BinaryFieldElt]:
    """Least element (by value) of multiplicative order 2^k - 1."""
    target = fld.order - 1
    for elt in fld.nonzero():
        if elt.multiplicative_order() == target:
            return elt
    return None


def embedding_table(source: BinaryField, target: BinaryField) -> Dict[int, int]:
    """Field isomorphism between two presentations of the same F_{2^k}.

    Sends the class of x in ``source`` to the least root of the source modulus in
    ``target`` and extends linearly.
    """
    if source.k != target.k:
        raise InvalidInputError("presentations of different degree")
    root = next(e for e in target.elements() if evaluate_f2_polynomial(source.modulus, e).is_zero())
    powers = [target.one]
    for _ in range(source.k - 1):
        powers.append(powers[-1] * root)
    table = {}
    for value in range(source.order):
        image = target.zero
        for i in range(source.k):
            if (value >> i) & 1:
                image = image + powers[i]
        table[value] = image.value
    return table
