"""The operators T'_r, I'_r, L_r on X_0(p) and the mod-l independence checks built on them.

T_r = sum_{s | r} T'_s, I'_r = T'_r - r and L_r = T'_{2r} - 2 T'_r = I'_{2r} - 2 I'_r.
For r < p one has I_2 T'_r = L_r (r odd) and L_r - L_{r/2} (r even).
"""

from enum import Enum
from typing import List, Tuple

import numpy as np
from sympy import divisor_sigma, divisors, mobius

from torsioncert.core.logging_config import get_logger
from torsioncert.core.models import ModelKind, RankEvidence
from torsioncert.core.validators import InputValidator
from torsioncert.criterion.hecke_lattice import Level
from torsioncert.exactalg.matrix import rank_mod
from torsioncert.modsym.gamma0 import merel_Ire
from torsioncert.modsym.hecke import HeckeElement, linear_combination
from torsioncert.oesterle.intersection import Ire_prime_vector

logger = get_logger(__name__)


class LrVariant(Enum):
    """Which family of vectors the independence check uses."""

    L = "L"  # L_1 e, ..., L_d e
    I_PRIME = "I'"  # I'_2 e, ..., I'_{2d} e
    I_FULL = "I"  # I_2 e, ..., I_{2d} e


def _require_x0(level: Level) -> None:
    if level.model is not ModelKind.X0:
        InputValidator.require(f"{level!r}: the L_r operators are defined on X_0(p)")


def t_prime(level: Level, r: int) -> HeckeElement:
    """T'_r = sum_{s | r} mu(r/s) T_s."""
    InputValidator.require(InputValidator.validate_range(r, 1, level.p - 1, "r"))
    parts = [(int(mobius(r // s)), level.hecke(s)) for s in divisors(r)]
    parts = [(w, t) for w, t in parts if w]
    return linear_combination([w for w, _ in parts], [t for _, t in parts], f"T'{r}")


def i_element(level: Level, r: int) -> HeckeElement:
    """I_r = T_r - sigma_1(r)."""
    return level.hecke(r).shift(-int(divisor_sigma(r)), name=f"I{r}")


def i_prime_element(level: Level, r: int) -> HeckeElement:
    """I'_r = T'_r - r."""
    return t_prime(level, r).shift(-r, name=f"I'{r}")


def L_r_element(level: Level, r: int) -> HeckeElement:
    """L_r = T'_{2r} - 2 T'_r.

    Raises:
        InvalidInputError: If 2r >= p or the level is not X_0(p)
    """
    _require_x0(level)
    InputValidator.require(InputValidator.validate_range(r, 1, None, "r"))
    if 2 * r >= level.p:
        InputValidator.require(f"L_{r} needs 2r < p, got p = {level.p}")
    return (t_prime(level, 2 * r) - t_prime(level, r).scale(2)).renamed(f"L{r}")


def L_identity_holds(level: Level, r: int) -> bool:
    """Whether I_2 T'_r equals L_r (r odd) or L_r - L_{r/2} (r even) as matrices."""
    lhs = i_element(level, 2) @ t_prime(level, r)
    rhs = L_r_element(level, r)
    if r % 2 == 0:
        rhs = rhs - L_r_element(level, r // 2)
    holds = lhs == rhs
    if not holds:
        logger.warning("%r: I2 T'%s identity fails", level, r)
    return holds


def winding_images(p: int, d: int, variant: LrVariant) -> List[List[int]]:
    """The integral vectors of ``variant`` in cuspidal coordinates, one per row."""
    if variant is LrVariant.I_FULL:
        return [merel_Ire(p, r) for r in range(2, 2 * d + 1)]
    if variant is LrVariant.I_PRIME:
        return [Ire_prime_vector(p, r) for r in range(2, 2 * d + 1)]
    rows = []
    for r in range(1, d + 1):
        high, low = Ire_prime_vector(p, 2 * r), Ire_prime_vector(p, r)
        rows.append([a - 2 * b for a, b in zip(high, low)])
    return rows


def lr_independence(
    level: Level, d: int, ell: int = 3, variant: LrVariant = LrVariant.L
) -> Tuple[bool, RankEvidence]:
    """Whether the vectors of ``variant`` are independent in H1(X_0(p), F_ell).

    Raises:
        InvalidInputError: If 2d >= p, ell is not an odd prime other than p, or the
            level is not X_0(p)
    """
    _require_x0(level)
    p = level.p
    InputValidator.require(InputValidator.validate_range(d, 1, None, "d"))
    InputValidator.require(InputValidator.validate_degree_bound(p, d))
    InputValidator.require(InputValidator.validate_prime(ell, "ell", minimum=3))
    if ell == p:
        InputValidator.require(f"ell must differ from p = {p}")
    rows = winding_images(p, d, variant)
    if level.size == 0:
        rank = 0
    else:
        rank = rank_mod(np.array([[v % ell for v in row] for row in rows], dtype=np.int64), ell)
    evidence = RankEvidence(
        ell=ell, rows=len(rows), cols=level.size, rank=rank, required=len(rows),
        notes=f"variant {variant.value}",
    )
    logger.debug("%r: %s vectors for d=%s have rank %s mod %s", level, variant.value, d, rank, ell)
    return rank == len(rows), evidence
