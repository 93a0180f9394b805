"""Centralized constants for torsioncert.

Tables quoted from the literature, search envelopes, field moduli and file-format
identifiers. Everything a certificate depends on is pinned here so runs are
reproducible.
"""

__all__ = [
    "MD_TABLE",
    "T2_SEARCH_PRIMES",
    "T1_CANDIDATE_BUDGET",
    "T1_SEARCH_ENVELOPE",
    "T1_MULTIPLIERS",
    "MAX_DEGREE",
    "BINARY_FIELD_MODULI",
    "ALTERNATE_F64_MODULUS",
    "CACHE_FORMAT_ID",
    "CERTIFICATE_FORMAT_ID",
    "MANIFEST_FORMAT_ID",
    "KNOWN_S_SETS",
    "S7_UPPER_BOUND",
    "COND3_PUBLISHED",
    "X173_SEXTICS",
    "X173_DIAMOND",
    "X173_QUOTED_FROBENIUS",
    "X_MU_EXCEPTIONS",
    "KERNEL_ENUMERATION_CAP",
    "primes_up_to",
    "cond3_passes_published",
]

from typing import Dict, FrozenSet, Tuple

from sympy import primerange

# =============================================================================
# Oesterle rank table
# =============================================================================

MD_TABLE: Dict[int, int] = {
    3: 29, 4: 37, 5: 41, 6: 43, 7: 47, 8: 47, 9: 53, 10: 53, 11: 53, 12: 61,
    13: 73, 14: 73, 15: 79, 16: 79, 17: 89, 18: 89, 19: 89, 20: 101, 21: 101,
    22: 109, 23: 109, 24: 109, 25: 127, 26: 127,
}
"""Published M_d values for 3 <= d <= 26 (rank of every R_{d,u} is d mod 3)."""

# =============================================================================
# Search envelopes
# =============================================================================

T2_SEARCH_PRIMES: Tuple[int, ...] = (3, 5, 7, 11, 13, 17, 19)
"""Primes q tried for t2 = T_q - <q> - q, in order."""

T1_CANDIDATE_BUDGET: int = 40
"""Default number of t1 candidates drawn from the annihilator lattice."""

T1_SEARCH_ENVELOPE: Tuple[int, int] = (2, 60)
"""Range of n for t = T_n fed to the factorization recipe for t1."""

T1_MULTIPLIERS: Tuple[int, ...] = (2, 3, 5, 7)
"""n for the multiples T_n t of Ann(A_e) basis elements offered as t1."""

MAX_DEGREE: int = 7
"""Largest degree d for which exclusions are certified."""

KERNEL_ENUMERATION_CAP: int = 20
"""Largest F_2 kernel dimension whose vectors are enumerated for Hamming weights."""

# =============================================================================
# Binary fields
# =============================================================================

BINARY_FIELD_MODULI: Dict[int, int] = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
}
"""Irreducible modulus per degree k, as a bit mask (bit i = coefficient of x^i)."""

ALTERNATE_F64_MODULUS: int = 0b1100001
"""x^6 + x^5 + 1, the modulus whose root names the element c of the 73 analysis."""

# =============================================================================
# File formats
# =============================================================================

CACHE_FORMAT_ID: str = "torsioncert-level-cache/1"
"""Header of per-level cache files; bump when the presentation changes."""

CERTIFICATE_FORMAT_ID: str = "torsioncert-certificate/1"
"""First field of every certificate."""

MANIFEST_FORMAT_ID: str = "torsioncert-manifest/1"
"""First field of every run manifest."""

# =============================================================================
# Known torsion sets
# =============================================================================


def primes_up_to(bound: int) -> FrozenSet[int]:
    """Return the primes p <= bound as a frozenset."""
    return frozenset(int(p) for p in primerange(2, bound + 1))


KNOWN_S_SETS: Dict[int, FrozenSet[int]] = {
    1: primes_up_to(7),
    2: primes_up_to(13),
    3: primes_up_to(13),
    4: primes_up_to(17),
    5: primes_up_to(19),
    6: primes_up_to(19) | {37},
}
"""Exact sets S(d) of primes occurring as torsion over degree-d fields, d <= 6."""

S7_UPPER_BOUND: FrozenSet[int] = primes_up_to(23) | {37, 43, 59, 61, 67, 71, 73, 113, 127}
"""Published upper bound for S(7)."""

X_MU_EXCEPTIONS: Dict[int, FrozenSet[int]] = {
    3: primes_up_to(17),
    4: primes_up_to(19) | {29},
    5: primes_up_to(19) | {29},
    6: primes_up_to(37),
    7: primes_up_to(37),
}
"""Primes for which no (t1, t2) pair passed the Gamma_H criterion in the published search."""

# =============================================================================
# Condition 3 (published lists)
# =============================================================================

COND3_PUBLISHED: Dict[int, Tuple[int, FrozenSet[int]]] = {
    3: (11, frozenset({13})),
    4: (19, frozenset()),
    5: (23, frozenset({31, 41})),
    6: (23, frozenset({29, 31, 37, 41, 73})),
}
"""For d = 3..6: (lower bound, exceptions); condition 3 holds for p >= bound outside them."""


def cond3_passes_published(d: int, p: int) -> bool:
    """Whether the published condition-3 list says p passes at degree d (3 <= d <= 7)."""
    if d == 7:
        return p in (47, 53) or (p >= 79 and p not in (113, 127))
    bound, exceptions = COND3_PUBLISHED[d]
    return p >= bound and p not in exceptions


# =============================================================================
# X1(73) over F_64
# =============================================================================

X173_SEXTICS: Tuple[int, ...] = (
    0b1000011,  # b^6 + b + 1
    0b1001001,  # b^6 + b^3 + 1
    0b1100111,  # b^6 + b^5 + b^2 + b + 1
    0b1110011,  # b^6 + b^5 + b^4 + b + 1
)
"""The four sextics whose roots are the b with (0,0) of order 73 on E_{b,1}."""

X173_DIAMOND: int = 10
"""Diamond operator acting transitively on the four Frobenius orbits."""

X173_QUOTED_FROBENIUS: Tuple[int, int, int] = (1, -8, -64)
"""Frobenius polynomial as printed (x^2 - 8x - 2^6); compared against the point count."""
