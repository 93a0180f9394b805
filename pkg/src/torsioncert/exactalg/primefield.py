"""Prime field elements and mod-ell kernels."""

from dataclasses import dataclass
from typing import Union

import numpy as np

from torsioncert.core.validators import InputValidator


@dataclass(frozen=True)
class PrimeFieldElt:
    """Element of F_p stored as a canonical residue in [0, p)."""

    value: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _coerce(self, other: Union["PrimeFieldElt", int]) -> "PrimeFieldElt":
        if isinstance(other, PrimeFieldElt):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other
        return PrimeFieldElt(other, self.p)

    def __add__(self, other: Union["PrimeFieldElt", int]) -> "PrimeFieldElt":
        return PrimeFieldElt(self.value + self._coerce(other).value, self.p)

    __radd__ = __add__

    def __sub__(self, other: Union["PrimeFieldElt", int]) -> "PrimeFieldElt":
        return PrimeFieldElt(self.value - self._coerce(other).value, self.p)

    def __rsub__(self, other: int) -> "PrimeFieldElt":
        return PrimeFieldElt(other - self.value, self.p)

    def __mul__(self, other: Union["PrimeFieldElt", int]) -> "PrimeFieldElt":
        return PrimeFieldElt(self.value * self._coerce(other).value, self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "PrimeFieldElt":
        return PrimeFieldElt(-self.value, self.p)

    def inverse(self) -> "PrimeFieldElt":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return PrimeFieldElt(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other: Union["PrimeFieldElt", int]) -> "PrimeFieldElt":
        return self * self._coerce(other).inverse()

    def __pow__(self, exponent: int) -> "PrimeFieldElt":
        return PrimeFieldElt(pow(self.value, exponent, self.p), self.p)

    def is_square(self) -> bool:
        """Euler's criterion (p odd); every element is a square in F_2."""
        if self.value == 0 or self.p == 2:
            return True
        return pow(self.value, (self.p - 1) // 2, self.p) == 1

    def __int__(self) -> int:
        return self.value


def left_kernel_mod(arr: np.ndarray, ell: int) -> np.ndarray:
    """Basis of {x : x M = 0 mod ell} as rows of an int64 array."""
    InputValidator.require(InputValidator.validate_prime(ell, "ell"))
    m, n = arr.shape
    work = np.concatenate(
        [np.asarray(arr, dtype=np.int64) % ell, np.eye(m, dtype=np.int64)], axis=1
    )
    rank = 0
    for col in range(n):
        if rank == m:
            break
        nonzero = np.nonzero(work[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        work[rank] = (work[rank] * pow(int(work[rank, col]), -1, ell)) % ell
        factors = work[:, col].copy()
        factors[rank] = 0
        work = (work - np.outer(factors, work[rank])) % ell
        rank += 1
    return work[rank:, n:].copy()
