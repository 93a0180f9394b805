"""Levels, their Hecke algebra and the annihilator of the winding element.

The Hecke algebra T acting on H1(X, Z) is materialised as the Z-span of the
operators T_n <a>, n <= B, with B grown until the span is unchanged for two
consecutive increments. A greedy Q-basis fixes coordinates: projecting onto its
pivot entries is injective on T (x) Q, so the span is an HNF in Q^g. A_e =
{s in T : s e = 0} and its annihilator Ann(A_e) are then integer kernels in
coefficient space.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from torsioncert.core.errors import HeckeSpanError, InternalConsistencyError
from torsioncert.core.logging_config import get_logger
from torsioncert.core.models import ModelKind
from torsioncert.exactalg.matrix import ExactMatrix, hnf_with_transform, integer_kernel
from torsioncert.modsym.gamma0 import build_space, winding_element
from torsioncert.modsym.gammah import build_space_H, winding_details_H
from torsioncert.modsym.hecke import HeckeElement, linear_combination
from torsioncert.modsym.space import ModularSymbolSpace

logger = get_logger(__name__)

# Greedy selection works mod this prime; products of two residues fit in int64.
SELECTION_MODULUS = 2147483647
# The bound may grow up to this multiple of the starting bound.
BOUND_GROWTH_FACTOR = 4
# Increments without change that end the growth.
STABLE_INCREMENTS = 2


@dataclass(frozen=True)
class WindingData:
    """Winding element of a level in cuspidal coordinates.

    Attributes:
        e: Rational coordinates
        denominator: Least D with D e integral
        certified_with: Prime q of the T_q used to compute or certify e
    """

    e: Tuple[Fraction, ...]
    denominator: int
    certified_with: int

    @property
    def integral(self) -> List[int]:
        """D e as integers."""
        return [int(v * self.denominator) for v in self.e]

    @property
    def is_zero(self) -> bool:
        return not any(self.e)


class Level:
    """X_0(p) or X_H(p) together with its Hecke operators on H1(X, Z).

    Args:
        p: Prime level
        model: X0 for X_0(p), XMU for X_H(p) with H given by ``subgroup``
        subgroup: Generators of H (ignored for X0); empty means H = {+-1}
    """

    def __init__(
        self, p: int, model: ModelKind = ModelKind.X0, subgroup: Iterable[int] = ()
    ) -> None:
        self.p = p
        self.model = model
        self.subgroup: Tuple[int, ...] = (
            () if model is ModelKind.X0 else tuple(sorted({g % p for g in subgroup}))
        )
        self.space: ModularSymbolSpace = (
            build_space(p) if model is ModelKind.X0 else build_space_H(p, self.subgroup)
        )
        self._hecke: Dict[int, HeckeElement] = {}
        self._diamond: Dict[int, HeckeElement] = {}

    @classmethod
    def x0(cls, p: int) -> "Level":
        return cls(p, ModelKind.X0)

    @classmethod
    def xmu(cls, p: int, subgroup: Iterable[int] = ()) -> "Level":
        return cls(p, ModelKind.XMU, subgroup)

    def __repr__(self) -> str:
        if self.model is ModelKind.X0:
            return f"Level(X0({self.p}))"
        return f"Level(X_H({self.p}), H=<{','.join(map(str, self.subgroup)) or '-1'}>)"

    @property
    def genus(self) -> int:
        return self.space.genus

    @property
    def size(self) -> int:
        """Rank of H1(X, Z)."""
        return self.space.cuspidal_rank

    @property
    def diamond_labels(self) -> Tuple[int, ...]:
        """Representatives of (Z/pZ)*/+-H, starting with 1."""
        if self.model is ModelKind.X0:
            return (1,)
        return self.space.coset_reps

    def identity(self) -> HeckeElement:
        return HeckeElement.identity(self.size)

    def hecke(self, n: int) -> HeckeElement:
        if n not in self._hecke:
            self._hecke[n] = HeckeElement(f"T{n}", self.space.hecke(n))
        return self._hecke[n]

    def diamond(self, n: int) -> HeckeElement:
        a = n % self.p
        if self.model is ModelKind.X0:
            return self.identity().renamed(f"<{a}>")
        if a not in self._diamond:
            self._diamond[a] = HeckeElement(f"<{a}>", self.space.diamond(a))
        return self._diamond[a]

    @cached_property
    def winding(self) -> WindingData:
        if self.model is ModelKind.X0:
            e = tuple(winding_element(self.p))
            certified_with = 2
        else:
            details = winding_details_H(self.p, self.subgroup)
            e, certified_with = details.e, details.q
        denominator = lcm(1, *(v.denominator for v in e))
        return WindingData(e, denominator, certified_with)


class _ModPEchelon:
    """Incremental row echelon form over F_P for greedy independence tests."""

    def __init__(self, modulus: int) -> None:
        self.modulus = modulus
        self.rows: List[np.ndarray] = []
        self.pivots: List[int] = []

    def add(self, vector: np.ndarray) -> bool:
        """Insert ``vector`` if independent of the rows so far."""
        P = self.modulus
        vec = np.array(vector, dtype=np.int64) % P
        for row, col in zip(self.rows, self.pivots):
            if vec[col]:
                vec = (vec - int(vec[col]) * row) % P
        nonzero = np.nonzero(vec)[0]
        if nonzero.size == 0:
            return False
        col = int(nonzero[0])
        vec = (vec * pow(int(vec[col]), -1, P)) % P
        self.rows.append(vec)
        self.pivots.append(col)
        return True


@dataclass
class HeckeLattice:
    """Z-basis of the Hecke algebra of a level.

    Attributes:
        level: The level
        generators: Z-basis of T, each an integral operator
        bound: Largest n whose T_n entered the span
        columns: Flat matrix positions on which the projection of T (x) Q is injective
        index: Index in T of the Z-span of the greedy Q-basis
    """

    level: Level
    generators: Tuple[HeckeElement, ...]
    bound: int
    columns: Tuple[int, ...] = ()
    index: int = 1

    @property
    def rank(self) -> int:
        return len(self.generators)

    def combination(self, coefficients: Sequence[int], name: str) -> HeckeElement:
        if not self.generators:
            return self.level.identity().renamed(name)
        return linear_combination(coefficients, self.generators, name)

    @cached_property
    def _to_coordinates(self) -> ExactMatrix:
        return ExactMatrix.from_rows([_project(g, self.columns) for g in self.generators]).inverse()

    def coordinates(self, element: HeckeElement) -> List[Fraction]:
        """Coordinates of an element of T (x) Q in the generators."""
        row = ExactMatrix.from_rows([_project(element, self.columns)], len(self.columns))
        return [Fraction(v) for v in (row @ self._to_coordinates).rows()[0]]

    def contains(self, element: HeckeElement) -> bool:
        """Whether ``element`` is an integral combination of the generators."""
        if not self.generators:
            return element.is_zero()
        coords = self.coordinates(element)
        if any(c.denominator != 1 for c in coords):
            return False
        return self.combination([int(c) for c in coords], element.name) == element


def starting_bound(p: int) -> int:
    return ceil(p / 6) + 2


def sturm_bound(level: Level) -> int:
    """Weight-2 Sturm bound for the level: (p + 1) [Gamma_0(p) : +-Gamma_H] / 6."""
    return ceil((level.p + 1) * len(level.diamond_labels) / 6)


def _operators(level: Level, n: int) -> List[HeckeElement]:
    """T_n <a> for every diamond label a; none when p | n."""
    if n % level.p == 0:
        return []
    ops = []
    for a in level.diamond_labels:
        op = level.hecke(n) if a == 1 else level.hecke(n) @ level.diamond(a)
        ops.append(op.renamed(f"T{n}" if a == 1 else f"T{n}<{a}>"))
    return ops


def _project(element: HeckeElement, columns: Sequence[int]) -> List[int]:
    flat = element.matrix.ravel()
    return [int(flat[c]) for c in columns]


def _greedy_basis(
    level: Level, target: int, cap: int
) -> Tuple[List[HeckeElement], Tuple[int, ...], int]:
    """First ``target`` Q-independent operators T_n <a>, their pivot positions and last n."""
    echelon = _ModPEchelon(SELECTION_MODULUS)
    chosen: List[HeckeElement] = []
    n = 0
    while len(chosen) < target and n < cap:
        n += 1
        for op in _operators(level, n):
            if echelon.add(op.mod(SELECTION_MODULUS).ravel()):
                chosen.append(op)
                if len(chosen) == target:
                    break
    if len(chosen) < target:
        raise HeckeSpanError(
            f"{level!r}: Hecke span reached rank {len(chosen)} < {target} by n = {n}"
        )
    return chosen, tuple(echelon.pivots), n


class _SpanHNF:
    """Z-span of operators in the coordinates of a fixed Q-basis, kept in HNF."""

    def __init__(self, basis: Sequence[HeckeElement], columns: Sequence[int]) -> None:
        self.columns = columns
        self.dimension = len(basis)
        self.to_basis = ExactMatrix.from_rows([_project(b, columns) for b in basis]).inverse()
        self.rows: List[List[Fraction]] = []

    def extend(self, ops: Sequence[HeckeElement]) -> bool:
        """Add ``ops`` to the span; True if it grew."""
        if not ops:
            return False
        projected = ExactMatrix.from_rows([_project(op, self.columns) for op in ops])
        new_rows = [[Fraction(v) for v in row] for row in (projected @ self.to_basis).rows()]
        rows = self.rows + new_rows
        denominator = lcm(1, *(v.denominator for row in rows for v in row))
        scaled = [[int(v * denominator) for v in row] for row in rows]
        h, _ = hnf_with_transform(scaled, self.dimension)
        reduced = [[Fraction(v, denominator) for v in row] for row in h if any(row)]
        grew = reduced != self.rows
        self.rows = reduced
        return grew

    def index(self) -> int:
        """[span : Z-span of the basis], the inverse of the HNF diagonal product."""
        product = Fraction(1)
        for i, row in enumerate(self.rows):
            product *= row[i]
        return int(1 / product)

    def operators(self, basis: Sequence[HeckeElement]) -> Tuple[HeckeElement, ...]:
        result = []
        for i, row in enumerate(self.rows):
            support = [k for k, v in enumerate(row) if v]
            if len(support) == 1 and row[support[0]] == 1:
                result.append(basis[support[0]])
                continue
            denominator = lcm(1, *(row[k].denominator for k in support))
            total = np.zeros(basis[0].matrix.shape, dtype=object)
            for k in support:
                total = total + basis[k].matrix.astype(object) * int(row[k] * denominator)
            if any(int(v) % denominator for v in total.flat):
                raise InternalConsistencyError(f"span generator {i} is not integral")
            result.append(HeckeElement(f"z{i}", total // denominator))
        return tuple(result)


def build_hecke_lattice(level: Level, bound: Optional[int] = None) -> HeckeLattice:
    """Z-span of T_n <a> for n <= B, as a Z-basis of T.

    B starts at ``bound`` (default ``starting_bound(p)``) or wherever the greedy
    Q-basis was completed, whichever is larger, and grows by one until the span
    is unchanged for ``STABLE_INCREMENTS`` consecutive steps.

    Raises:
        HeckeSpanError: If T (x) Q is not reached, or the span is still growing,
            by ``BOUND_GROWTH_FACTOR`` times the starting bound
    """
    target = level.genus
    start = bound or starting_bound(level.p)
    cap = start * BOUND_GROWTH_FACTOR
    if target == 0:
        return HeckeLattice(level, (), 0)
    basis, columns, reached = _greedy_basis(level, target, cap)
    span = _SpanHNF(basis, columns)
    n = max(start, reached)
    span.extend([op for m in range(1, n + 1) for op in _operators(level, m)])
    unchanged = 0
    while unchanged < STABLE_INCREMENTS:
        if n >= cap:
            raise HeckeSpanError(f"{level!r}: Hecke span still growing at n = {n}")
        n += 1
        unchanged = 0 if span.extend(_operators(level, n)) else unchanged + 1
    index = span.index()
    if index > 1:
        logger.info("%r: greedy Q-basis has index %s in the Hecke span", level, index)
    logger.debug("%r: Hecke lattice of rank %s stable at n = %s", level, target, n)
    return HeckeLattice(level, span.operators(basis), n, columns, index)


@dataclass
class WindingAnnihilator:
    """A_e = ann(e) in T and its annihilator, as coefficient rows and operators."""

    lattice: HeckeLattice
    ae_coefficients: List[List[int]] = field(default_factory=list)
    ann_coefficients: List[List[int]] = field(default_factory=list)

    @cached_property
    def ae(self) -> List[HeckeElement]:
        return [
            self.lattice.combination(c, f"a[{i}]") for i, c in enumerate(self.ae_coefficients)
        ]

    @cached_property
    def ann(self) -> List[HeckeElement]:
        return [
            self.lattice.combination(c, f"ann[{i}]")
            for i, c in enumerate(self.ann_coefficients)
        ]

    def annihilates(self, element: HeckeElement) -> bool:
        """Whether element * a = 0 for every a in the A_e basis."""
        return all((element @ a).is_zero() for a in self.ae)


def probe_vectors(level: Level, count: int = 2) -> List[List[int]]:
    """Deterministic small integer vectors used to test t a = 0 through t a v = 0."""
    rng = np.random.default_rng(level.p)
    return [[int(v) for v in rng.integers(-3, 4, size=level.size)] for _ in range(count)]


def _columns(elements: Sequence[HeckeElement], vector: Sequence[int]) -> List[List[int]]:
    """Rows of the matrix whose i-th column is elements[i] applied to ``vector``."""
    images = [element.apply(vector) for element in elements]
    return [[int(image[r]) for image in images] for r in range(len(vector))]


def winding_annihilator(
    level: Level, lattice: Optional[HeckeLattice] = None
) -> WindingAnnihilator:
    """Compute A_e and Ann(A_e) inside the Hecke lattice.

    Ann(A_e) is cut out by t a v = 0 for the A_e basis and a few probe vectors
    v; every basis element is then checked to kill A_e exactly.

    Raises:
        HeckeSpanError: If the Hecke span does not reach full rank
        InternalConsistencyError: If a computed Ann element fails the exact check
    """
    lattice = lattice or build_hecke_lattice(level)
    k = lattice.rank
    if k == 0:
        return WindingAnnihilator(lattice)
    winding = level.winding
    identity_rows = [[int(i == j) for j in range(k)] for i in range(k)]
    if winding.is_zero:
        logger.info("%r: winding element is zero, A_e = T", level)
        return WindingAnnihilator(lattice, identity_rows, [])

    ae_coefficients = integer_kernel(
        ExactMatrix.from_rows(_columns(lattice.generators, winding.integral))
    )
    result = WindingAnnihilator(lattice, ae_coefficients)
    if not ae_coefficients:
        result.ann_coefficients = identity_rows
        logger.info("%r: A_e = 0, Ann(A_e) = T", level)
        return result

    constraints: List[List[int]] = []
    for a in result.ae:
        for v in probe_vectors(level):
            w = [int(x) for x in a.apply(v)]
            if any(w):
                constraints.extend(_columns(lattice.generators, w))
    result.ann_coefficients = integer_kernel(ExactMatrix.from_rows(constraints, k))
    for t in result.ann:
        if not result.annihilates(t):
            raise InternalConsistencyError(f"{level!r}: {t.name} does not annihilate A_e")
    logger.info(
        "%r: rank A_e = %s, rank Ann(A_e) = %s", level, len(ae_coefficients),
        len(result.ann_coefficients),
    )
    return result
