"""Modular symbols for Gamma_0(p), p prime.

Symbols are normalised so that index k is lambda(k) = [k:1] = {0, 1/k} and
index p is [1:0]. The winding element is the cuspidal class e with
e . omega = -integral of omega over {0, oo}; it is obtained from Merel's
formula (T_2 - 3) e = -sum lambda(c/d), the sum over a > b >= 0, d > c > 0,
ad - bc = 2.
"""

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import List, Optional, Sequence, Union

import numpy as np

from torsioncert.core.errors import InternalConsistencyError, InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.core.validators import InputValidator
from torsioncert.exactalg.matrix import ExactMatrix
from torsioncert.modsym.hecke import HeckeElement
from torsioncert.modsym.manin import ManinSymbolList, heilbronn_merel, signed_closure
from torsioncert.modsym.pairing import PairingForm
from torsioncert.modsym.space import ModularSymbolSpace, PathEnd

logger = get_logger(__name__)

Rational = Union[int, Fraction]


@lru_cache(maxsize=32)
def build_space(p: int) -> ModularSymbolSpace:
    """Manin presentation of H1(X_0(p), cusps; Z).

    Raises:
        InvalidInputError: If p is not prime
    """
    InputValidator.require(InputValidator.validate_prime(p, "p"))
    space = ModularSymbolSpace(ManinSymbolList(p, signed_closure(p, range(1, p))))
    if space.image_rank != len(space.cusps) - 1:
        raise InternalConsistencyError(f"boundary image rank {space.image_rank} at p={p}")
    logger.info("Gamma_0(%s): genus %s, relative rank %s", p, space.genus, space.rank)
    return space


def lambda_symbol(p: int, k: int) -> np.ndarray:
    """lambda(k) = {0, 1/k} for k != 0 mod p, and lambda(0) = {0, oo}."""
    return build_space(p).symbol_vector(k % p, 1)


def path_symbol(p: int, start: PathEnd, end: PathEnd) -> np.ndarray:
    """The modular symbol {start, end}; None is the cusp oo."""
    return build_space(p).path_vector(start, end)


def hecke_matrix(p: int, n: int) -> HeckeElement:
    """T_n on H1(X_0(p), Z)."""
    return HeckeElement(f"T{n}", build_space(p).hecke(n))


def relative_hecke_matrix(p: int, n: int) -> np.ndarray:
    """T_n on the relative space, row convention (``v @ M``)."""
    return build_space(p).relative_operator("T", n)


def merel_Ire(p: int, r: int) -> List[int]:
    """(T_r - sigma_1(r)) e as cuspidal coordinates: -sum lambda(c/d).

    Raises:
        InvalidInputError: Unless 1 <= r < p
    """
    InputValidator.require(InputValidator.validate_range(r, 1, p - 1, "r"))
    space = build_space(p)
    total = space.zero_vector()
    for _, _, c, d in heilbronn_merel(r):
        if c > 0:
            total = total - space.symbol_vector(int(c), int(d))
    return [int(v) for v in space.cuspidal_part(total)]


def _solve(matrix: np.ndarray, rhs: Sequence[Rational]) -> List[Fraction]:
    try:
        solution = ExactMatrix.from_rows(matrix.tolist()).solve(list(rhs))
    except InvalidInputError as e:
        raise InternalConsistencyError("T_2 - 3 is singular on the cuspidal space") from e
    return [Fraction(v) for v in solution]


@lru_cache(maxsize=32)
def _winding(p: int) -> tuple:
    space = build_space(p)
    if space.cuspidal_rank == 0:
        return ()
    shifted = HeckeElement("T2", space.hecke(2)).shift(-3)
    e = _solve(shifted.matrix, merel_Ire(p, 2))
    if any(((p - 1) * v).denominator != 1 for v in e):
        raise InternalConsistencyError(f"(p-1)e is not integral at p={p}")
    return tuple(e)


def winding_element(p: int) -> List[Fraction]:
    """Cuspidal coordinates of the winding element; empty in genus 0."""
    return list(_winding(p))


def winding_denominator(p: int) -> int:
    """Least positive D with D e integral."""
    return lcm(1, *(v.denominator for v in winding_element(p)))


@lru_cache(maxsize=32)
def pairing_form(p: int) -> PairingForm:
    return PairingForm(build_space(p))


def pairing(p: int, v: Sequence[Rational], w: Sequence[Rational]) -> Rational:
    """Intersection number of two cuspidal vectors in adapted coordinates.

    Raises:
        InvalidInputError: If either vector has nonzero boundary
    """
    return pairing_form(p)(v, w)


def cuspidal_vector(p: int, coords: Optional[Sequence[Rational]]) -> np.ndarray:
    """Adapted coordinates of a cuspidal vector given by cuspidal coordinates."""
    return build_space(p).embed_cuspidal(list(coords or []))
