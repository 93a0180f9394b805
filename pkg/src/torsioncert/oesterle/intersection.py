"""Closed-form intersection numbers of I_r e and I'_r e on X_0(p).

I_r = T_r - sigma_1(r) and I'_r is its Moebius inverse, so I_r = sum_{s | r} I'_s.
Both send the winding element into H1(X_0(p), Z). The closed forms below are
elementary sums of floors and small enumerations; the ``*_oracle`` functions
compute the same numbers from the modular-symbol presentation.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List

import numpy as np
from sympy import divisors, mobius

from torsioncert.core.logging_config import get_logger
from torsioncert.core.validators import InputValidator
from torsioncert.modsym.gamma0 import (
    cuspidal_vector,
    lambda_symbol,
    merel_Ire,
    pairing,
    path_symbol,
)
from torsioncert.modsym.pairing import H_fn, star_of

logger = get_logger(__name__)

__all__ = [
    "H_fn",
    "IntersectionQuery",
    "v_r",
    "v_r_prime",
    "Ire_dot_lambda",
    "Ire_prime_dot_lambda",
    "ire_prime_dot_lambda_cd",
    "ire_prime_dot_lambda_small",
    "Ire_prime_dot_path",
    "Ire_prime_vector",
    "Ire_dot_lambda_oracle",
    "Ire_prime_dot_lambda_oracle",
    "Ire_prime_dot_path_oracle",
]


def _require_r(p: int, r: int) -> None:
    InputValidator.require(InputValidator.validate_prime(p, "p"))
    InputValidator.require(InputValidator.validate_range(r, 1, p - 1, "r"))


def _require_k(p: int, k: int) -> None:
    InputValidator.require(InputValidator.validate_range(k, 1, p - 1, "k"))


def _quadruples(r: int, p: int, i: int, coprime: bool) -> int:
    count = 0
    for d in range(1, r):
        for a in range(1, (r - 1) // d + 1):
            rest = r - a * d
            for c in divisors(rest):
                if (d * i - c) % p:
                    continue
                if coprime and gcd(c, d) != 1:
                    continue
                count += 1
    return count


def v_r(p: int, r: int, i: int) -> int:
    """#{a', b', c', d' >= 1 : a'd' + b'c' = r, d' i = c' mod p}."""
    InputValidator.require(InputValidator.validate_range(r, 1, None, "r"))
    return _quadruples(r, p, i, coprime=False)


def v_r_prime(p: int, r: int, i: int) -> int:
    """``v_r`` restricted to gcd(c', d') = 1."""
    InputValidator.require(InputValidator.validate_range(r, 1, None, "r"))
    return _quadruples(r, p, i, coprime=True)


def Ire_dot_lambda(p: int, r: int, k: int) -> int:
    """I_r e . lambda(k) = sum_{s | r} (floor(sk/p) - floor(sk*/p)) + v_r(k) - v_r(k*).

    Raises:
        InvalidInputError: Unless 1 <= r < p and 1 <= k < p
    """
    _require_r(p, r)
    _require_k(p, k)
    ks = star_of(p, k)
    floors = sum(s * k // p - s * ks // p for s in divisors(r))
    return floors + v_r(p, r, k) - v_r(p, r, ks)


def Ire_prime_dot_lambda(p: int, r: int, k: int) -> int:
    """I'_r e . lambda(k) = floor(rk/p) - floor(rk*/p) + v'_r(k) - v'_r(k*).

    Raises:
        InvalidInputError: Unless 1 <= r < p and 1 <= k < p
    """
    _require_r(p, r)
    _require_k(p, k)
    ks = star_of(p, k)
    return r * k // p - r * ks // p + v_r_prime(p, r, k) - v_r_prime(p, r, ks)


@dataclass(frozen=True)
class IntersectionQuery:
    """lambda(k) written through a reduced fraction c/d with 1 <= d < c < p/r.

    a, b solve ad - bc = 1 with 0 <= a < c, 0 <= b < d; k = c/d and
    k* = -d/c mod p; u, u* are given by dk = up + c and ck* = u*p - d.
    """

    p: int
    r: int
    c: int
    d: int
    a: int
    b: int
    k: int
    k_star: int
    u: int
    u_star: int

    @classmethod
    def from_cd(cls, p: int, r: int, c: int, d: int) -> "IntersectionQuery":
        """Derive a, b, k, k*, u, u* from (p, r, c, d).

        Raises:
            InvalidInputError: If the fraction is not admissible
        """
        _require_r(p, r)
        if not (1 <= d < c and c * r < p):
            InputValidator.require(f"need 1 <= d < c < p/r, got c={c}, d={d}, r={r}, p={p}")
        if gcd(c, d) != 1:
            InputValidator.require(f"c = {c} and d = {d} are not coprime")
        a = pow(d, -1, c)
        b = (a * d - 1) // c
        k = c * pow(d, -1, p) % p
        k_star = star_of(p, k)
        u = (d * k - c) // p
        u_star = (c * k_star + d) // p
        return cls(p, r, c, d, a, b, k, k_star, u, u_star)


def ire_prime_dot_lambda_cd(p: int, r: int, c: int, d: int) -> int:
    """I'_r e . lambda(c/d) = floor(ru/d) - floor(rb/d) + floor(ra/c) - floor(ru*/c).

    Raises:
        InvalidInputError: Unless 1 <= d < c < p/r and gcd(c, d) = 1
    """
    q = IntersectionQuery.from_cd(p, r, c, d)
    return r * q.u // d - r * q.b // d + r * q.a // c - r * q.u_star // c


def ire_prime_dot_lambda_small(p: int, r: int, k: int) -> int:
    """I'_r e . lambda(k) = floor(r/k) - floor(ru*/k) for k >= 2, kr < p, u* = p^-1 mod k.

    Raises:
        InvalidInputError: If k < 2 or kr >= p
    """
    _require_r(p, r)
    if k < 2 or k * r >= p:
        InputValidator.require(f"need k >= 2 and kr < p, got k={k}, r={r}, p={p}")
    u_star = pow(p, -1, k)
    return r // k - r * u_star // k


def Ire_prime_dot_path(p: int, r: int, a: int, c: int) -> int:
    """I'_r e . {0, a/c} = floor(ra/c) - floor(ru*/c) with a p u* = 1 mod c.

    Raises:
        InvalidInputError: Unless c >= 2, cr < p, 1 <= a < c and gcd(a, c) = 1
    """
    _require_r(p, r)
    if c < 2 or c * r >= p:
        InputValidator.require(f"need c >= 2 and cr < p, got c={c}, r={r}, p={p}")
    if not (1 <= a < c) or gcd(a, c) != 1:
        InputValidator.require(f"a = {a} must be a unit in [1, {c})")
    u_star = pow(a * p, -1, c)
    return r * a // c - r * u_star // c


# ----------------------------------------------------------------------
# Modular-symbol oracles
# ----------------------------------------------------------------------


def Ire_prime_vector(p: int, r: int) -> List[int]:
    """I'_r e in cuspidal coordinates, sum_{s | r} mu(r/s) I_s e."""
    _require_r(p, r)
    total: List[int] = []
    for s in divisors(r):
        weight = int(mobius(r // s))
        if not weight:
            continue
        vector = merel_Ire(p, s)
        total = [weight * v for v in vector] if not total else [
            t + weight * v for t, v in zip(total, vector)
        ]
    return total


def _pair_with(p: int, coords: List[int], target: np.ndarray) -> int:
    value = pairing(p, cuspidal_vector(p, coords), target)
    if isinstance(value, Fraction) and value.denominator != 1:
        raise ArithmeticError(f"non-integral intersection {value} at p={p}")
    return int(value)


def Ire_dot_lambda_oracle(p: int, r: int, k: int) -> int:
    """I_r e . lambda(k) from Merel's formula and the lambda-pairing."""
    _require_r(p, r)
    _require_k(p, k)
    return _pair_with(p, merel_Ire(p, r), lambda_symbol(p, k))


def Ire_prime_dot_lambda_oracle(p: int, r: int, k: int) -> int:
    _require_r(p, r)
    _require_k(p, k)
    return _pair_with(p, Ire_prime_vector(p, r), lambda_symbol(p, k))


def Ire_prime_dot_path_oracle(p: int, r: int, a: int, c: int) -> int:
    """I'_r e . {0, a/c} through the path symbol of {0, a/c}."""
    _require_r(p, r)
    return _pair_with(p, Ire_prime_vector(p, r), path_symbol(p, Fraction(0), Fraction(a, c)))
