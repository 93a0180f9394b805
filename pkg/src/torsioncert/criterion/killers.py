"""The Hecke operators t1 (factoring through the winding quotient) and t2 (torsion killer)."""

from itertools import combinations
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy import Poly, symbols

from torsioncert.core.constants import T1_CANDIDATE_BUDGET, T1_MULTIPLIERS
from torsioncert.core.errors import InternalConsistencyError
from torsioncert.core.logging_config import get_logger
from torsioncert.core.models import ModelKind
from torsioncert.core.validators import InputValidator
from torsioncert.criterion.hecke_lattice import Level, WindingAnnihilator
from torsioncert.exactalg.matrix import (
    ExactMatrix,
    charpoly,
    evaluate_polynomial,
    independent_row_indices,
    integer_kernel,
)
from torsioncert.modsym.hecke import HeckeElement

logger = get_logger(__name__)

_X = symbols("x")


def t2_element(level: Level, q: int) -> HeckeElement:
    """T_q - <q> - q; on X_0(p) this is T_q - q - 1.

    Raises:
        InvalidInputError: If q is 2, equal to p or not prime
    """
    InputValidator.require(InputValidator.validate_t2_prime(q, level.p))
    if level.model is ModelKind.X0:
        return level.hecke(q).shift(-(q + 1), name=f"T{q} - {q + 1}")
    return (level.hecke(q) - level.diamond(q)).shift(-q, name=f"T{q} - <{q}> - {q}")


def t1_candidates(
    annihilator: WindingAnnihilator,
    budget: int = T1_CANDIDATE_BUDGET,
    multipliers: Sequence[int] = T1_MULTIPLIERS,
) -> List[HeckeElement]:
    """Nonzero elements of Ann(A_e): basis, multiples T_n ann[i], then +-1 pair sums.

    Every basis element has already been checked to kill A_e exactly. Ann(A_e)
    is an ideal of T, so the multiples and the sums do as well. The order is
    deterministic.
    """
    basis = annihilator.ann
    candidates: List[HeckeElement] = []
    seen: Set[int] = set()

    def offer(element: HeckeElement) -> None:
        if len(candidates) >= budget or element.is_zero():
            return
        key = hash(element)
        if key in seen:
            return
        seen.add(key)
        candidates.append(element)

    for element in basis:
        offer(element)
    level = annihilator.lattice.level
    for n in multipliers:
        if len(candidates) >= budget:
            break
        if n % level.p == 0:
            continue
        for i, element in enumerate(basis):
            offer((level.hecke(n) @ element).renamed(f"T{n}*ann[{i}]"))
    for i, j in combinations(range(len(basis)), 2):
        if len(candidates) >= budget:
            break
        offer((basis[i] + basis[j]).renamed(f"ann[{i}]+ann[{j}]"))
        offer((basis[i] - basis[j]).renamed(f"ann[{i}]-ann[{j}]"))
    if not candidates:
        logger.info("No nonzero t1 candidates: Ann(A_e) is zero")
    return candidates


def _plus_restriction(level: Level, t: HeckeElement) -> ExactMatrix:
    """Matrix of t on H1(Z)^+ = ker(star - 1)."""
    n = level.size
    star = level.space.star()
    shifted = [[int(star[i][j]) - int(i == j) for j in range(n)] for i in range(n)]
    basis = integer_kernel(ExactMatrix.from_rows(shifted, n))
    if len(basis) != level.genus:
        raise InternalConsistencyError(
            f"{level!r}: plus part has rank {len(basis)}, expected {level.genus}"
        )
    columns = np.array(basis, dtype=object).T  # n x g, columns span H1^+
    images = t.matrix.dot(columns)
    pivots = independent_row_indices(columns.tolist(), level.genus)
    square = ExactMatrix.from_rows(columns[pivots].tolist())
    return square.inverse() @ ExactMatrix.from_rows(images[pivots].tolist())


def _poly_coefficients(poly: Poly) -> Tuple[int, ...]:
    return tuple(int(c) for c in poly.all_coeffs())


def _apply_polynomial(t: HeckeElement, coefficients: Sequence[int], vector: Sequence) -> list:
    result: list = [0] * len(vector)
    for c in coefficients:
        image = t.apply(result)
        result = [a + c * b for a, b in zip(image, vector)]
    return result


def t1_from_polynomial(
    level: Level, t: HeckeElement, annihilator: Optional[WindingAnnihilator] = None
) -> Optional[HeckeElement]:
    """t1(t) = prod_{i in I} P_i(t)^{e_i} from the factorization of the plus charpoly of t.

    P = prod P_i^{e_i} is the characteristic polynomial of t on H1(Z)^+ and
    I = {i : (P/P_i)(t) e = 0 or e_i > 1}; an empty I gives t1 = 1. Returns None
    when t1(t) is zero or fails to kill the given A_e.
    """
    if level.genus == 0:
        return None
    P = Poly(list(charpoly(_plus_restriction(level, t))), _X)
    _, factors = P.factor_list()
    e = list(level.winding.e)
    chosen: List[Tuple[Poly, int]] = []
    for factor, multiplicity in factors:
        if factor.LC() < 0:
            factor = -factor
        cofactor = P.exquo(factor)
        if multiplicity > 1 or not any(_apply_polynomial(t, _poly_coefficients(cofactor), e)):
            chosen.append((factor, multiplicity))
    product = Poly(1, _X)
    for factor, multiplicity in chosen:
        product = product * factor**multiplicity
    value = evaluate_polynomial(
        _poly_coefficients(product), ExactMatrix.from_rows(t.matrix.tolist())
    )
    t1 = HeckeElement(f"factor({t.name})", np.array(value.rows(), dtype=object))
    if t1.is_zero():
        return None
    if annihilator is not None and not annihilator.annihilates(t1):
        logger.warning("%r: factor(%s) does not kill A_e, dropped", level, t.name)
        return None
    logger.debug("%r: factor(%s) uses %s of %s factors", level, t.name, len(chosen), len(factors))
    return t1
