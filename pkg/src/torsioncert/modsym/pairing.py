"""Intersection pairing on H1(X_0(p), Z) through lambda-symbols.

lambda(k) = {0, 1/k} for k != 0 is a closed loop. Its intersection with
lambda(k') is given by the chord formula

    lambda(k) . lambda(k') = -H(k'-k) + H(k'-k*) + H(k'*-k) - H(k'*-k*)

where kk* = -1 mod p and H is the half-step function. Geometrically lambda(k)
is the chord C_k of the unit disc between zeta^k and zeta^(k*).
"""

from fractions import Fraction
from functools import cached_property
from typing import List, Sequence, Union

import numpy as np

from torsioncert.core.errors import InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.exactalg.matrix import ExactMatrix, independent_row_indices
from torsioncert.modsym.space import ModularSymbolSpace

logger = get_logger(__name__)

Rational = Union[int, Fraction]


def H_fn(x: Rational) -> Fraction:
    """1 for x > 0, 1/2 at 0, 0 for x < 0."""
    if x > 0:
        return Fraction(1)
    if x == 0:
        return Fraction(1, 2)
    return Fraction(0)


def star_of(p: int, k: int) -> int:
    """The k* in [1, p-1] with k k* = -1 mod p."""
    k %= p
    if k == 0:
        raise InvalidInputError("k must be a unit mod p")
    return (-pow(k, -1, p)) % p


def lambda_pairing(p: int, k: int, k2: int) -> int:
    """lambda(k) . lambda(k2) by the H-function formula."""
    k, k2 = k % p, k2 % p
    ks, k2s = star_of(p, k), star_of(p, k2)
    value = -H_fn(k2 - k) + H_fn(k2 - ks) + H_fn(k2s - k) - H_fn(k2s - ks)
    if value.denominator != 1:
        raise ArithmeticError(f"half-integer pairing at p={p}, k={k}, k'={k2}")
    return int(value)


def _in_arc(p: int, start: int, end: int, x: int) -> bool:
    """x lies strictly inside the counter-clockwise arc from zeta^start to zeta^end."""
    return 0 < (x - start) % p < (end - start) % p


def chord_intersection(p: int, k: int, k2: int) -> int:
    """Signed crossing C_k2 . C_k of chords between p-th roots of unity.

    Chords sharing an endpoint contribute 0. Otherwise C_k crosses C_k2 iff
    exactly one endpoint of C_k lies on the arc from zeta^k2 to zeta^(k2*); the
    sign records which one.
    """
    a1, a2 = k2 % p, star_of(p, k2)
    b1, b2 = k % p, star_of(p, k)
    if {a1, a2} & {b1, b2}:
        return 0
    first = _in_arc(p, a1, a2, b1)
    second = _in_arc(p, a1, a2, b2)
    if first and not second:
        return 1
    if second and not first:
        return -1
    return 0


class PairingForm:
    """Bilinear intersection form on the cuspidal lattice of a Gamma_0(p) space.

    A set of lambda(k) forming a Q-basis of the cuspidal space is chosen; their
    Gram matrix is transported to cuspidal coordinates through the pivot rows of
    the basis matrix.
    """

    def __init__(self, space: ModularSymbolSpace) -> None:
        if not space.is_gamma0:
            raise InvalidInputError("the lambda-symbol pairing is defined on Gamma_0(p) spaces")
        self.space = space
        g2 = space.cuspidal_rank
        p = space.p
        columns = [list(space.lambda_vectors[k][:g2]) for k in range(1, p)]
        chosen = independent_row_indices(columns, g2)
        self.basis_ks: List[int] = [i + 1 for i in chosen]
        if len(chosen) != g2:
            raise ArithmeticError(f"lambda symbols span rank {len(chosen)} < {g2} at p={p}")
        basis = ExactMatrix.from_columns([columns[i] for i in chosen], g2) if g2 else None
        self._form = self._transport(basis) if basis is not None else ExactMatrix.zeros(0, 0)

    def _transport(self, basis: ExactMatrix) -> ExactMatrix:
        p = self.space.p
        gram = ExactMatrix.from_rows(
            [[lambda_pairing(p, a, b) for b in self.basis_ks] for a in self.basis_ks]
        )
        inverse = basis.inverse()
        return inverse.T @ gram @ inverse

    @cached_property
    def gram(self) -> ExactMatrix:
        """The form on cuspidal coordinates (unimodular on H1(Z))."""
        return self._form

    def __call__(self, v: Sequence[Rational], w: Sequence[Rational]) -> Rational:
        """Intersection number of two cuspidal vectors (adapted coordinates).

        Raises:
            InvalidInputError: If either vector has nonzero boundary
        """
        x = self.space.cuspidal_part(v)
        y = self.space.cuspidal_part(w)
        if not x:
            return 0
        left = np.array(x, dtype=object).reshape(1, -1)
        right = np.array(y, dtype=object).reshape(-1, 1)
        value = (left @ self._form.entries @ right)[0, 0]
        value = Fraction(value)
        return int(value) if value.denominator == 1 else value
