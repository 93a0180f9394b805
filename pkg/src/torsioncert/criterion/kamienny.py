"""Formal-immersion rank checks over F_2.

Independence of Hecke operators in T (x) F_2 is tested through their images
in End(H1(X, Z) (x) F_2), flattened to vectors. Independence there implies
independence in T (x) F_2, so a pass is sound; a failure only means the
criterion is not verified by this method.
"""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from torsioncert.core.constants import KERNEL_ENUMERATION_CAP
from torsioncert.core.logging_config import get_logger
from torsioncert.core.models import ModelKind, RankEvidence
from torsioncert.core.validators import InputValidator
from torsioncert.criterion.hecke_lattice import Level
from torsioncert.exactalg.gf2 import gf2_left_kernel, gf2_rank, min_dependency_weight, pack_rows
from torsioncert.modsym.gammah import InfinityCusp, OrderedCuspSum, enumerate_ordered_cusp_sums
from torsioncert.modsym.hecke import HeckeElement

logger = get_logger(__name__)

Operator = Tuple[int, int]
"""(k, i) stands for T_i <k> t."""


class Mod2Images:
    """Flattened mod-2 images of T_i <k> t for one level and one t."""

    def __init__(self, level: Level, t_mod2: np.ndarray) -> None:
        self.level = level
        self.t = np.asarray(t_mod2, dtype=np.int64) % 2
        self._cache: Dict[Operator, np.ndarray] = {}

    @classmethod
    def of(cls, level: Level, t: HeckeElement) -> "Mod2Images":
        return cls(level, t.mod(2))

    @classmethod
    def of_product(cls, level: Level, t1: HeckeElement, t2: HeckeElement) -> "Mod2Images":
        """t1 t2 reduced mod 2 without forming the integral product."""
        return cls(level, (t1.mod(2) @ t2.mod(2)) % 2)

    @property
    def width(self) -> int:
        return int(self.t.size)

    def row(self, k: int, i: int) -> np.ndarray:
        key = (k % self.level.p, i)
        if key not in self._cache:
            op = self.level.hecke(i).mod(2)
            if key[0] != 1:
                op = (op @ self.level.diamond(key[0]).mod(2)) % 2
            self._cache[key] = ((op @ self.t) % 2).ravel()
        return self._cache[key]

    def stack(self, operators: Sequence[Operator]) -> np.ndarray:
        if not operators:
            return np.zeros((0, self.width), dtype=np.int64)
        return np.vstack([self.row(k, i) for k, i in operators])

    def rank(self, operators: Sequence[Operator]) -> int:
        if not operators or self.width == 0:
            return 0
        return gf2_rank(pack_rows(self.stack(operators)), self.width)


def _require_bound(level: Level, d: int) -> None:
    InputValidator.require(InputValidator.validate_range(d, 1, None, "d"))
    InputValidator.require(InputValidator.validate_degree_bound(level.p, d))


def kamienny_check_x0(
    level: Level, d: int, t1: HeckeElement, t2: HeckeElement
) -> Tuple[bool, RankEvidence]:
    """Whether T_1 t, ..., T_d t (t = t1 t2) are independent in End(H1 (x) F_2).

    Raises:
        InvalidInputError: If 2d >= p
    """
    _require_bound(level, d)
    images = Mod2Images.of_product(level, t1, t2)
    operators = [(1, i) for i in range(1, d + 1)]
    rank = images.rank(operators)
    evidence = RankEvidence(ell=2, rows=d, cols=images.width, rank=rank, required=d)
    return rank == d, evidence


def kamienny_check_H(level: Level, d: int, t: HeckeElement) -> Tuple[bool, RankEvidence]:
    """Independence of {T_i <d_j> t : i <= n_j} for every ordered sum of inf-cusps.

    Sums are taken up to diamond translation; <d_j> moves the cusp c_j to oo.

    Raises:
        InvalidInputError: If 2d >= p
    """
    _require_bound(level, d)
    images = Mod2Images.of(level, t)
    if level.model is ModelKind.X0:
        sums = [OrderedCuspSum(((InfinityCusp(1), d),))]
    else:
        sums = enumerate_ordered_cusp_sums(level.p, level.subgroup, d)
    worst: Optional[Tuple[int, str]] = None
    for cusp_sum in sums:
        operators = [
            (cusp.label, i) for cusp, n in cusp_sum.terms for i in range(1, n + 1)
        ]
        rank = images.rank(operators)
        if worst is None or rank < worst[0]:
            worst = (rank, str(cusp_sum))
        if rank < d:
            logger.debug("%r: dependence at cusp sum %s (rank %s)", level, cusp_sum, rank)
            break
    rank, label = worst if worst is not None else (0, "")
    evidence = RankEvidence(
        ell=2, rows=d, cols=images.width, rank=rank, required=d, cusp_sums=len(sums),
        notes=f"weakest sum {label}" if rank < d else "",
    )
    return rank >= d, evidence


def fast_operator_set(d: int, r: int, labels: Sequence[int]) -> List[Operator]:
    """D_r = {(1, i) : d - r < i <= r} u {(k, i) : 1 <= i <= d - r, k in D}."""
    first = [(1, i) for i in range(d - r + 1, r + 1)]
    rest = [(k, i) for i in range(1, d - r + 1) for k in labels]
    return first + rest


def fast_r_values(d: int) -> range:
    """The r of the sets D_r checked for degree d: ceil(d/2) <= r <= d."""
    return range((d + 1) // 2, d + 1)


def kamienny_check_H_fast(level: Level, d: int, t: HeckeElement) -> Tuple[bool, RankEvidence]:
    """Sufficient condition for ``kamienny_check_H``.

    For each ceil(d/2) <= r <= d, no d of the operators indexed by D_r may be
    dependent: every nonzero dependency among them must have weight > d. An ordered
    sum with top multiplicity n_1 lies in D_{n_1} when n_1 >= ceil(d/2) and in
    D_{d - n_1} otherwise, so these r cover every sum.

    Raises:
        InvalidInputError: If 2d >= p
    """
    _require_bound(level, d)
    images = Mod2Images.of(level, t)
    labels = level.diamond_labels
    largest_kernel = 0
    lightest: Optional[int] = None
    rows = 0
    for r in fast_r_values(d):
        operators = fast_operator_set(d, r, labels)
        rows = max(rows, len(operators))
        if len(operators) < d:
            continue
        kernel = gf2_left_kernel(images.stack(operators))
        k = int(kernel.shape[0])
        if k == 0:
            continue
        largest_kernel = max(largest_kernel, k)
        weight = min_dependency_weight(kernel, KERNEL_ENUMERATION_CAP)
        if weight is None:
            evidence = RankEvidence(
                ell=2, rows=len(operators), cols=images.width, rank=len(operators) - k,
                required=d, kernel_dimension=k,
                notes=f"r={r}: kernel dimension {k} exceeds enumeration cap",
            )
            return False, evidence
        lightest = weight if lightest is None else min(lightest, weight)
        if weight <= d:
            evidence = RankEvidence(
                ell=2, rows=len(operators), cols=images.width, rank=len(operators) - k,
                required=d, kernel_dimension=k, min_dependency_weight=weight,
                notes=f"r={r}: dependency of weight {weight}",
            )
            return False, evidence
    base_rank = images.rank([(1, i) for i in range(1, d + 1)])
    evidence = RankEvidence(
        ell=2, rows=rows, cols=images.width, rank=base_rank, required=d,
        kernel_dimension=largest_kernel, min_dependency_weight=lightest,
    )
    return base_rank >= d, evidence
