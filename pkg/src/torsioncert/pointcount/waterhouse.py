"""Emptiness of Y_1(p)(F_q), q = l^d, from the possible group orders of elliptic curves.

#E(F_q) = q + 1 - t ranges over the ordinary traces (|t| < 2 sqrt(q), l not
dividing t) and a short list of supersingular traces depending on d and l.
Y_1(p)(F_q) is empty exactly when p divides none of these orders. Every
comparison with a half power of q is done on squared integers.
"""

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Dict, List, Tuple

from sympy import primerange

from torsioncert.core.logging_config import get_logger
from torsioncert.core.validators import InputValidator

logger = get_logger(__name__)


@dataclass(frozen=True)
class PointCountQuery:
    """(p, l, d) with p >= 5 and l != p."""

    p: int
    ell: int
    d: int

    def __post_init__(self) -> None:
        if self.p in (2, 3):
            InputValidator.require(
                f"p = {self.p}: the emptiness statement is false for p = 2 or 3"
            )
        InputValidator.require(InputValidator.validate_prime(self.p, "p", minimum=5))
        InputValidator.require(InputValidator.validate_prime(self.ell, "l"))
        InputValidator.require(InputValidator.validate_range(self.d, 1, None, "d"))
        if self.ell == self.p:
            InputValidator.require(f"l must differ from p, got l = p = {self.p}")

    @property
    def q(self) -> int:
        return self.ell**self.d


def ordinary_orders(q: int, ell: int) -> List[int]:
    """n with (n - q - 1)^2 < 4q and gcd(n - 1, l) = 1."""
    width = isqrt(4 * q) + 1
    return [
        n
        for n in range(max(1, q + 1 - width), q + 2 + width)
        if (n - q - 1) ** 2 < 4 * q and gcd(n - 1, ell) == 1
    ]


def supersingular_orders(ell: int, d: int) -> Dict[int, Tuple[int, ...]]:
    """Group orders of supersingular curves over F_{l^d}, keyed by condition number."""
    q = ell**d
    orders: Dict[int, Tuple[int, ...]] = {}
    if d % 2 == 0:
        root = ell ** (d // 2)
        orders[2] = (q + 1 + 2 * root, q + 1 - 2 * root)
        if ell % 3 != 1:
            orders[3] = (q + 1 + root, q + 1 - root)
    elif ell in (2, 3):
        step = ell ** ((d + 1) // 2)
        orders[4] = (q + 1 + step, q + 1 - step)
    if d % 2 == 1 or ell % 4 != 1:
        orders[5] = (q + 1,)
    return orders


def waterhouse_conditions(p: int, ell: int, d: int) -> Dict[int, bool]:
    """Each of the five divisibility conditions; a condition that does not apply holds.

    Raises:
        InvalidInputError: If p is 2 or 3, p = l, or an argument is not prime
    """
    query = PointCountQuery(p, ell, d)
    results = {1: all(n % p for n in ordinary_orders(query.q, ell))}
    special = supersingular_orders(ell, d)
    for number in (2, 3, 4, 5):
        results[number] = all(n % p for n in special.get(number, ()))
    return results


def waterhouse_empty(p: int, ell: int, d: int) -> bool:
    """True iff no elliptic curve over F_{l^d} has a point of order p."""
    return all(waterhouse_conditions(p, ell, d).values())


def supersingular_only(p: int, ell: int, d: int) -> bool:
    """Y_1(p)(F_{l^d}) is nonempty but no ordinary curve has a point of order p."""
    conditions = waterhouse_conditions(p, ell, d)
    return conditions[1] and not all(conditions.values())


def cusp_field_condition(p: int, ell: int, d: int) -> bool:
    """No non-rational cusp of X_1(p) becomes defined over F_{l^d}: p divides neither l^d -+ 1."""
    q = ell**d
    return (q - 1) % p != 0 and (q + 1) % p != 0


def apriori_bound_holds(p: int, ell: int, d: int) -> bool:
    """p > (l^{d/2} + 1)^2, compared exactly."""
    gap = p - ell**d - 1
    return gap > 0 and gap * gap > 4 * ell**d


def condition3_holds(p: int, d: int, ell: int = 2) -> bool:
    """For all d' <= d: Y_1(p)(F_{l^d'}) is empty and no extra cusps appear."""
    return all(
        waterhouse_empty(p, ell, k) and cusp_field_condition(p, ell, k) for k in range(1, d + 1)
    )


def condition3_exceptions(d: int, ell: int = 2, p_max: int = 300, p_min: int = 5) -> List[int]:
    """Primes p_min <= p < p_max (p != l) at which ``condition3_holds`` fails.

    Raises:
        InvalidInputError: If d < 1
    """
    InputValidator.require(InputValidator.validate_range(d, 1, None, "d"))
    failing = [
        int(p)
        for p in primerange(max(5, p_min), p_max)
        if p != ell and not condition3_holds(int(p), d, ell)
    ]
    logger.debug("condition 3 exceptions d=%s l=%s below %s: %s", d, ell, p_max, failing)
    return failing
