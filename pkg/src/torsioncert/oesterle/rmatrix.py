"""The matrices R_{d,u} over (Z/MZ)*, the M_d table and the d >= 26 inequality.

If R_{d,u} has rank d mod l, then L_1 e, ..., L_d e are independent in
H1(X_0(p), F_l) for every prime p > 2dM with pu = 1 mod M.
"""

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Dict, List, Optional, Tuple

import numpy as np

from torsioncert.core.constants import MD_TABLE
from torsioncert.core.logging_config import get_logger
from torsioncert.core.validators import InputValidator
from torsioncert.exactalg.matrix import rank_mod

logger = get_logger(__name__)

# find_Md gives up above this modulus.
MD_SEARCH_LIMIT = 1000


def _require_modulus(M: int) -> None:
    if M < 3 or M % 2 == 0:
        InputValidator.require(f"M must be odd and >= 3, got {M}")


def units(M: int) -> List[int]:
    return [a for a in range(1, M) if gcd(a, M) == 1]


def eps(n: int, M: int) -> int:
    """0 if n mod M lies in (0, M/2), else 1; equals floor(2n/M) - 2 floor(n/M)."""
    return (2 * n) // M - 2 * (n // M)


@dataclass(frozen=True)
class EpsTable:
    """epsilon on all of Z/MZ; eps(0) = 0, and non-units occur as ra when gcd(r, M) > 1."""

    M: int

    def __post_init__(self) -> None:
        _require_modulus(self.M)

    @cached_property
    def values(self) -> Dict[int, int]:
        return {n: eps(n, self.M) for n in range(self.M)}

    def __call__(self, n: int) -> int:
        return self.values[n % self.M]


@dataclass(frozen=True)
class RMatrix:
    """R_{d,u}: rows r = 1..d, columns the units a of Z/MZ, entry eps(ra) - eps(ru/a)."""

    d: int
    M: int
    u: int
    columns: Tuple[int, ...]
    entries: np.ndarray

    def rank(self, ell: int = 3) -> int:
        return rank_mod(self.entries % ell, ell)

    def entry(self, r: int, a: int) -> int:
        return int(self.entries[r - 1, self.columns.index(a % self.M)])


def r_matrix(d: int, M: int, u: int) -> RMatrix:
    """Build R_{d,u}.

    Raises:
        InvalidInputError: If M is even or below 3, d < 1, or u is not a unit mod M
    """
    _require_modulus(M)
    InputValidator.require(InputValidator.validate_range(d, 1, None, "d"))
    InputValidator.require(InputValidator.validate_unit(u, M, "u"))
    table = EpsTable(M)
    columns = tuple(units(M))
    entries = np.zeros((d, len(columns)), dtype=np.int64)
    for j, a in enumerate(columns):
        ratio = u * pow(a, -1, M)
        for r in range(1, d + 1):
            entries[r - 1, j] = table(r * a) - table(r * ratio)
    return RMatrix(d, M, u % M, columns, entries)


def check_Md(d: int, M: int, ell: int = 3) -> bool:
    """True iff R_{d,u} has rank d mod ell for every unit u of Z/MZ.

    Raises:
        InvalidInputError: If M is even or below 3, or d < 1
    """
    _require_modulus(M)
    InputValidator.require(InputValidator.validate_prime(ell, "ell"))
    for u in units(M):
        rank = r_matrix(d, M, u).rank(ell)
        if rank < d:
            logger.debug("M=%s fails for d=%s at u=%s (rank %s)", M, d, u, rank)
            return False
    return True


def find_Md(d: int, ell: int = 3, limit: int = MD_SEARCH_LIMIT) -> Optional[int]:
    """Least odd M >= 3 passing ``check_Md``; may differ from the published table value."""
    InputValidator.require(InputValidator.validate_range(d, 1, None, "d"))
    for M in range(3, limit + 1, 2):
        if check_Md(d, M, ell):
            return M
    logger.warning("no M <= %s passes for d=%s mod %s", limit, d, ell)
    return None


def verify_md_table(
    d_min: int = 3, d_max: int = 26, ell: int = 3
) -> List[Tuple[int, int, bool]]:
    """(d, M_d, passes) for each published table entry in [d_min, d_max].

    Raises:
        InvalidInputError: If the range leaves the published table
    """
    low, high = min(MD_TABLE), max(MD_TABLE)
    if d_min < low or d_max > high or d_min > d_max:
        InputValidator.require(f"d range must lie in [{low}, {high}], got {d_min}..{d_max}")
    return [(d, MD_TABLE[d], check_Md(d, MD_TABLE[d], ell)) for d in range(d_min, d_max + 1)]


def asymptotic_gate(d: int) -> bool:
    """(3^{d/2} + 1)^2 > 65 (2d)^6, compared in integers.

    The left side is 3^d + 2*3^{d/2} + 1, so with X = 65 (2d)^6 - 3^d - 1 the
    inequality reads 2*3^{d/2} > X, i.e. X < 0 or 4*3^d > X^2.
    """
    InputValidator.require(InputValidator.validate_range(d, 1, None, "d"))
    gap = 65 * (2 * d) ** 6 - 3**d - 1
    return gap < 0 or 4 * 3**d > gap * gap
