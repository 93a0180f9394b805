"""Modular symbols for Gamma_H(p) = X_1(p)/H, diamond operators and cusps over oo.

The cusps of X_H are a/c with p | c ("inf" cusps, classified by a mod +-H) and
a/c with p not dividing c ("zero" cusps, classified by c mod +-H). The diamond
<n> sends the inf cusp of a to the inf cusp of a/n, so <a> moves Inf(a) to oo.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import numpy as np
from sympy import isprime, sqf_part, symbols, Poly

from torsioncert.core.errors import (
    InternalConsistencyError,
    InvalidInputError,
    WindingElementUnavailable,
)
from torsioncert.core.logging_config import get_logger
from torsioncert.core.validators import InputValidator
from torsioncert.exactalg.matrix import (
    ExactMatrix,
    Polynomial,
    charpoly,
    evaluate_polynomial,
    rank_mod_generic,
)
from torsioncert.modsym.hecke import HeckeElement
from torsioncert.modsym.manin import ManinSymbolList, signed_closure
from torsioncert.modsym.space import ModularSymbolSpace

logger = get_logger(__name__)

WINDING_CHECK_PRIMES: Tuple[int, ...] = (2, 3, 5)
# certifying modulus for invertibility of f(T_q); Horner stays inside int64
_CHECK_MODULUS = 67108859  # largest prime below 2**26


def _units(p: int, H: Iterable[int]) -> FrozenSet[int]:
    gens = list(H)
    InputValidator.require(InputValidator.validate_subgroup(p, gens))
    return signed_closure(p, gens)


@lru_cache(maxsize=32)
def _space(p: int, units: FrozenSet[int]) -> ModularSymbolSpace:
    space = ModularSymbolSpace(ManinSymbolList(p, units))
    if space.image_rank != len(space.cusps) - 1:
        raise InternalConsistencyError(f"boundary image rank {space.image_rank} at p={p}")
    logger.info(
        "Gamma_H(%s), |+-H|=%s: genus %s, cusps %s", p, len(units), space.genus, len(space.cusps)
    )
    return space


def build_space_H(p: int, H: Iterable[int] = ()) -> ModularSymbolSpace:
    """Manin presentation of H1(X_H(p), cusps; Z).

    Args:
        p: Prime level, at least 5
        H: Generators of H inside (Z/pZ)*; -1 is always adjoined

    Raises:
        InvalidInputError: If p < 5, p is composite or a generator is not a unit
    """
    InputValidator.require(InputValidator.validate_prime(p, "p", minimum=5))
    return _space(p, _units(p, H))


def hecke_matrix_H(p: int, H: Iterable[int], n: int) -> HeckeElement:
    """T_n on H1(X_H(p), Z)."""
    return HeckeElement(f"T{n}", build_space_H(p, H).hecke(n))


def diamond_matrix(p: int, H: Iterable[int], n: int) -> HeckeElement:
    """<n> on H1(X_H(p), Z).

    Raises:
        InvalidInputError: If p divides n
    """
    InputValidator.require(InputValidator.validate_unit(n, p, "n"))
    return HeckeElement(f"<{n % p}>", build_space_H(p, H).diamond(n))


# ----------------------------------------------------------------------
# Winding element
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class WindingComputation:
    """The winding element of X_H together with how it was certified.

    Attributes:
        e: Cuspidal coordinates of e = -(cuspidal projection of {0, oo})
        projector_prime: Prime l in +-H mod p whose T_l - 1 - l computed the projection
        q: Prime whose boundary polynomial f(T_q) certified the result
        f: Squarefree boundary polynomial used with T_q, leading coefficient first
    """

    e: Tuple[Fraction, ...]
    projector_prime: int
    q: int
    f: Polynomial


def _projector_prime(p: int, units: FrozenSet[int]) -> int:
    ell = 2
    while ell == p or not isprime(ell) or ell % p not in units:
        ell += 1
    return ell


def _horner_vector(
    space: ModularSymbolSpace, poly: Sequence[int], matrix: np.ndarray, vector: Sequence[object]
) -> np.ndarray:
    """f(M) applied to a row vector, M in row convention."""
    result = np.zeros(len(vector), dtype=object)
    base = np.array(list(vector), dtype=object)
    for coefficient in poly:
        result = space.apply(matrix, result) + base * int(coefficient)
    return result


def _invertible_mod(poly: Sequence[int], block: np.ndarray, modulus: int) -> bool:
    """Whether f(M) has full rank mod a prime; full rank mod P implies det != 0."""
    n = block.shape[0]
    reduced = np.array([[int(v) % modulus for v in row] for row in block], dtype=np.int64)
    result = np.zeros((n, n), dtype=np.int64)
    identity = np.eye(n, dtype=np.int64)
    for coefficient in poly:
        result = (result @ reduced) % modulus
        result = (result + identity * (int(coefficient) % modulus)) % modulus
    return rank_mod_generic(result, modulus) == n


def _squarefree(poly: Polynomial) -> Polynomial:
    x = symbols("x")
    reduced = Poly(sqf_part(Poly(list(poly), x)), x)
    coefficients = [int(c) for c in reduced.all_coeffs()]
    if coefficients[0] < 0:
        coefficients = [-c for c in coefficients]
    return tuple(coefficients)


@lru_cache(maxsize=32)
def _winding_H(p: int, units: FrozenSet[int]) -> WindingComputation:
    space = _space(p, units)
    g2 = space.cuspidal_rank
    if g2 == 0:
        return WindingComputation((), 0, 0, (1,))
    lam0 = space.symbol_vector(0, 1)

    ell = _projector_prime(p, units)
    relative = space.relative_operator("T", ell)
    lower = space.boundary_block("T", ell)
    expected = np.eye(lower.shape[0], dtype=np.int64).astype(object) * (1 + ell)
    if not np.array_equal(lower, expected):
        raise InternalConsistencyError(f"T_{ell} is not 1 + {ell} on the boundary at p={p}")
    image = space.apply(relative, lam0) - lam0 * (1 + ell)
    target = space.cuspidal_part(image)
    system = HeckeElement(f"T{ell}", space.hecke(ell)).shift(-(1 + ell))
    try:
        projection = ExactMatrix.from_rows(system.matrix.tolist()).solve(target)
    except InvalidInputError as e:
        raise InternalConsistencyError(f"T_{ell} - {1 + ell} singular at p={p}") from e
    e_coords = tuple(-Fraction(v) for v in projection)

    for q in WINDING_CHECK_PRIMES:
        if q == p:
            continue
        block = space.boundary_block("T", q)
        full = charpoly(ExactMatrix.from_rows(block.tolist())) if block.size else (1,)
        f = _squarefree(full)
        operator = space.relative_operator("T", q)
        boundary = ExactMatrix.from_rows(block.tolist())
        if block.size and not evaluate_polynomial(f, boundary).is_zero():
            logger.debug("p=%s: boundary T_%s not semisimple, using its full charpoly", p, q)
            f = full
        cuspidal = space.hecke(q)
        if not _invertible_mod(f, cuspidal, _CHECK_MODULUS):
            logger.warning("p=%s: f(T_%s) not certified invertible, trying next prime", p, q)
            continue
        lhs = _horner_vector(space, f, operator, space.embed_cuspidal(e_coords))
        rhs = -_horner_vector(space, f, operator, lam0)
        if not space.is_cuspidal(rhs) or any(a != b for a, b in zip(lhs, rhs)):
            raise InternalConsistencyError(f"winding element fails f(T_{q}) check at p={p}")
        logger.debug("p=%s: winding element certified with T_%s, deg f = %s", p, q, len(f) - 1)
        return WindingComputation(e_coords, ell, q, f)
    raise WindingElementUnavailable(
        f"no T_q, q in {WINDING_CHECK_PRIMES}, has f(T_q) invertible on cusp forms at p={p}"
    )


def winding_details_H(p: int, H: Iterable[int] = ()) -> WindingComputation:
    """Winding element of X_H(p) with its certification data.

    Raises:
        WindingElementUnavailable: If no T_q in the fallback list certifies e
    """
    InputValidator.require(InputValidator.validate_prime(p, "p", minimum=5))
    return _winding_H(p, _units(p, H))


def winding_element_H(p: int, H: Iterable[int] = ()) -> List[Fraction]:
    """Cuspidal coordinates of the winding element of X_H(p)."""
    return list(winding_details_H(p, H).e)


# ----------------------------------------------------------------------
# Cusps over oo and ordered sums
# ----------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class InfinityCusp:
    """Cusp of X_H over oo in X_0(p), labelled by the least a in its +-H coset."""

    label: int

    def __str__(self) -> str:
        return "oo" if self.label == 1 else f"inf[{self.label}]"


@dataclass(frozen=True)
class OrderedCuspSum:
    """n_0 c_0 + ... + n_i c_i with n_0 >= ... >= n_i >= 1 and distinct cusps.

    Terms are stored by decreasing multiplicity, ties by label.
    """

    terms: Tuple[Tuple[InfinityCusp, int], ...]

    def __post_init__(self) -> None:
        cusps = [c for c, _ in self.terms]
        if len(set(cusps)) != len(cusps):
            raise InvalidInputError("cusps of an ordered sum must be distinct")
        if any(n < 1 for _, n in self.terms):
            raise InvalidInputError("multiplicities must be positive")
        ordered = tuple(sorted(self.terms, key=lambda t: (-t[1], t[0].label)))
        object.__setattr__(self, "terms", ordered)

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.terms)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(n for _, n in self.terms)

    @property
    def cusps(self) -> Tuple[InfinityCusp, ...]:
        return tuple(c for c, _ in self.terms)

    def key(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((-n, c.label) for c, n in self.terms)

    def __str__(self) -> str:
        return " + ".join(f"{n}*{c}" if n > 1 else str(c) for c, n in self.terms)


class CuspLabels:
    """Coset arithmetic on (Z/pZ)*/+-H for inf-cusp labels."""

    def __init__(self, p: int, units: FrozenSet[int]) -> None:
        self.p = p
        self.units = units
        self.label_of: Dict[int, int] = {}
        for a in range(1, p):
            if a not in self.label_of:
                for h in units:
                    self.label_of[(a * h) % p] = a
        self.labels: Tuple[int, ...] = tuple(sorted(set(self.label_of.values())))

    def translate(self, label: int, n: int) -> int:
        """Label of <n> Inf(label) = Inf(label / n)."""
        return self.label_of[(label * pow(n, -1, self.p)) % self.p]

    def translate_sum(self, cusp_sum: OrderedCuspSum, n: int) -> OrderedCuspSum:
        return OrderedCuspSum(
            tuple((InfinityCusp(self.translate(c.label, n)), m) for c, m in cusp_sum.terms)
        )

    def canonical(self, cusp_sum: OrderedCuspSum) -> OrderedCuspSum:
        """Least translate among those moving a top-multiplicity cusp to oo."""
        top = cusp_sum.multiplicities[0]
        candidates = [
            self.translate_sum(cusp_sum, c.label) for c, n in cusp_sum.terms if n == top
        ]
        return min(candidates, key=OrderedCuspSum.key)


def _partitions(d: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            yield (first,) + rest


def _assignments(
    parts: Tuple[int, ...], available: Tuple[int, ...], forced: int = 0
) -> Iterator[List[Tuple[int, int]]]:
    """Assign distinct labels to parts; equal parts get unordered label sets.

    When ``forced`` is nonzero the largest part group must contain it.
    """
    if not parts:
        yield []
        return
    value = parts[0]
    count = sum(1 for v in parts if v == value)
    rest = parts[count:]
    if forced:
        pool = tuple(a for a in available if a != forced)
        choices: Iterable[Tuple[int, ...]] = (
            (forced,) + combo for combo in combinations(pool, count - 1)
        )
    else:
        choices = combinations(available, count)
    for chosen in choices:
        remaining = tuple(a for a in available if a not in chosen)
        for tail in _assignments(rest, remaining):
            yield [(a, value) for a in chosen] + tail


def enumerate_ordered_cusp_sums(
    p: int, H: Iterable[int], d: int, normalize: bool = True
) -> List[OrderedCuspSum]:
    """All ordered sums of inf-cusps of degree d.

    With ``normalize`` one representative per class under simultaneous diamond
    translation is returned, with a top-multiplicity cusp at oo.

    Raises:
        InvalidInputError: If d < 1
    """
    InputValidator.require(InputValidator.validate_range(d, 1, None, "d"))
    InputValidator.require(InputValidator.validate_prime(p, "p", minimum=5))
    labels = CuspLabels(p, _units(p, H))
    found: Dict[Tuple[Tuple[int, int], ...], OrderedCuspSum] = {}
    for parts in _partitions(d, d):
        if len(parts) > len(labels.labels):
            continue
        for assignment in _assignments(parts, labels.labels, forced=1 if normalize else 0):
            cusp_sum = OrderedCuspSum(tuple((InfinityCusp(a), n) for a, n in assignment))
            if normalize:
                cusp_sum = labels.canonical(cusp_sum)
            found.setdefault(cusp_sum.key(), cusp_sum)
    return [found[k] for k in sorted(found)]


# ----------------------------------------------------------------------
# Genus
# ----------------------------------------------------------------------


def genus_formula(p: int, H: Iterable[int] = ()) -> int:
    """Genus of X_H(p) from index, elliptic points and cusps.

    ``H`` may be any subset of units; the full group gives X_0(p). Works for
    every prime p, independently of the Manin presentation.
    """
    InputValidator.require(InputValidator.validate_prime(p, "p"))
    units = signed_closure(p, H) if p > 2 else frozenset({1})
    fibre = Fraction(p - 1, len(units))
    mu = (p + 1) * fibre
    roots2 = [x for x in range(1, p) if (x * x + 1) % p == 0] if p > 2 else [1]
    roots3 = [x for x in range(1, p) if (x * x + x + 1) % p == 0]
    e2 = len(roots2) * fibre if roots2 and roots2[0] in units else 0
    e3 = len(roots3) * fibre if roots3 and roots3[0] in units else 0
    cusps = 2 * fibre
    genus = 1 + mu / 12 - Fraction(e2) / 4 - Fraction(e3) / 3 - cusps / 2
    if genus.denominator != 1:
        raise InternalConsistencyError(f"non-integral genus {genus} at p={p}")
    return int(genus)
