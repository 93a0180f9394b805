"""Named integer matrices of the Hecke algebra acting on a cuspidal lattice."""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Union

import numpy as np

from torsioncert.core.errors import InvalidInputError
from torsioncert.exactalg.matrix import exact_matmul

Rational = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class HeckeElement:
    """An element of T acting on column vectors of cuspidal coordinates.

    Args:
        name: Symbolic tag such as "T5", "<3>", "T3 - <3> - 3"
        matrix: Square object array of Python ints
    """

    name: str
    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.matrix, dtype=object)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidInputError(f"{self.name}: Hecke matrices are square, got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "matrix", arr)

    @classmethod
    def identity(cls, n: int, name: str = "T1") -> "HeckeElement":
        arr = np.zeros((n, n), dtype=np.int64).astype(object)
        for i in range(n):
            arr[i, i] = 1
        return cls(name, arr)

    @property
    def size(self) -> int:
        return int(self.matrix.shape[0])

    def _check(self, other: "HeckeElement") -> None:
        if other.size != self.size:
            raise InvalidInputError(f"{self.name} and {other.name} act on different lattices")

    def __matmul__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        return HeckeElement(f"({self.name})({other.name})", exact_matmul(self.matrix, other.matrix))

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        return HeckeElement(f"{self.name} + {other.name}", self.matrix + other.matrix)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        return HeckeElement(f"{self.name} - {other.name}", self.matrix - other.matrix)

    def scale(self, factor: int, name: str = "") -> "HeckeElement":
        return HeckeElement(name or f"{factor}*({self.name})", self.matrix * int(factor))

    def shift(self, constant: int, name: str = "") -> "HeckeElement":
        """self + constant * identity."""
        sign = "+" if constant >= 0 else "-"
        label = name or f"{self.name} {sign} {abs(constant)}"
        return HeckeElement(label, self.matrix + HeckeElement.identity(self.size).matrix * constant)

    def renamed(self, name: str) -> "HeckeElement":
        return HeckeElement(name, self.matrix)

    def apply(self, vector: Sequence[Rational]) -> List[Rational]:
        column = np.array(list(vector), dtype=object).reshape(-1, 1)
        if column.shape[0] != self.size:
            raise InvalidInputError(f"{self.name}: vector of length {column.shape[0]}")
        return list(exact_matmul(self.matrix, column)[:, 0])

    def mod(self, ell: int) -> np.ndarray:
        """Entries reduced into [0, ell) as an int64 array."""
        return np.array([[int(v) % ell for v in row] for row in self.matrix], dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(v != 0 for v in self.matrix.flat)

    def commutes_with(self, other: "HeckeElement") -> bool:
        self._check(other)
        return bool(
            np.array_equal(
                exact_matmul(self.matrix, other.matrix), exact_matmul(other.matrix, self.matrix)
            )
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return other.size == self.size and bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self) -> int:
        return hash((self.size, tuple(int(v) for v in self.matrix.flat)))

    def __repr__(self) -> str:
        return f"HeckeElement({self.name!r}, {self.size}x{self.size})"


def linear_combination(
    coefficients: Sequence[int], elements: Sequence[HeckeElement], name: str
) -> HeckeElement:
    """sum c_i x_i as a named element."""
    if not elements:
        raise InvalidInputError("empty combination")
    total = np.zeros(elements[0].matrix.shape, dtype=np.int64).astype(object)
    for c, element in zip(coefficients, elements):
        if c:
            total = total + element.matrix * int(c)
    return HeckeElement(name, total)
