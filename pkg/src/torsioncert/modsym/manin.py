"""Manin symbols for Gamma_H(p) at prime level.

A Manin symbol [c:d] is the coset of (a b; c d) in Gamma_H \\ SL2(Z), i.e. the
modular symbol {b/d, a/c}. Pairs are taken modulo the scalar action of +-H on
(Z/pZ)^2 - {(0,0)}. When +-H is all of (Z/pZ)* (Gamma_0(p)) the symbols are
normalised to (k:1) for k in Z/pZ followed by (1:0), so index k is lambda(k).
"""

__all__ = [
    "ManinSymbolList",
    "heilbronn_merel",
    "sparse_quotient",
    "signed_closure",
]

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from torsioncert.core.errors import InternalConsistencyError
from torsioncert.core.logging_config import get_logger

logger = get_logger(__name__)


def signed_closure(p: int, generators: Iterable[int]) -> FrozenSet[int]:
    """The subgroup +-H of (Z/pZ)* generated by -1 and ``generators``."""
    group = {1, p - 1}
    frontier = list(group)
    gens = [g % p for g in generators] + [p - 1]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = (x * g) % p
            if y not in group:
                group.add(y)
                frontier.append(y)
    return frozenset(group)


@lru_cache(maxsize=256)
def heilbronn_merel(n: int) -> np.ndarray:
    """Merel's Heilbronn matrices of determinant n as rows (a, b, c, d).

    The set is a > b >= 0, d > c >= 0, ad - bc = n.
    """
    rows: List[Tuple[int, int, int, int]] = []
    for a in range(1, n + 1):
        for d in range((n + a - 1) // a, n + 2 - a):
            bc = a * d - n
            if bc == 0:
                rows.extend((a, b, 0, d) for b in range(a))
                rows.extend((a, 0, c, d) for c in range(1, d))
            else:
                for b in range((bc - 1) // (d - 1) + 1 if d > 1 else a, a):
                    if bc % b == 0 and bc // b < d:
                        rows.append((a, b, bc // b, d))
    arr = np.array(rows, dtype=np.int64).reshape(-1, 4)
    arr.flags.writeable = False
    return arr


@dataclass
class ManinSymbolList:
    """Enumerated Manin symbols for Gamma_H(p) with an O(1) index table.

    Args:
        p: Prime level
        units: The subgroup +-H of (Z/pZ)*, containing -1
    """

    p: int
    units: FrozenSet[int]
    symbols: List[Tuple[int, int]] = field(init=False)
    table: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        p = self.p
        table = np.full((p, p), -1, dtype=np.int64)
        if len(self.units) == p - 1:
            self.symbols = [(k, 1) for k in range(p)] + [(1, 0)]
            inverses = np.array([0] + [pow(d, -1, p) for d in range(1, p)], dtype=np.int64)
            cs = np.arange(p, dtype=np.int64)
            for d in range(1, p):
                table[:, d] = (cs * inverses[d]) % p
            table[1:, 0] = p
        else:
            hs = np.array(sorted(self.units), dtype=np.int64)
            self.symbols = []
            for c in range(p):
                for d in range(p):
                    if (c, d) == (0, 0) or table[c, d] >= 0:
                        continue
                    index = len(self.symbols)
                    # iteration order makes the first member of an orbit its least element
                    self.symbols.append((c, d))
                    table[(hs * c) % p, (hs * d) % p] = index
        table.flags.writeable = False
        self.table = table
        logger.debug(
            "Manin symbols at p=%s, |+-H|=%s: %s", self.p, len(self.units), len(self.symbols)
        )

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def is_gamma0(self) -> bool:
        return len(self.units) == self.p - 1

    def index(self, c: int, d: int) -> int:
        """Index of [c:d]; -1 when (c, d) is (0, 0) mod p."""
        return int(self.table[c % self.p, d % self.p])

    def indices(self, c: np.ndarray, d: np.ndarray) -> np.ndarray:
        """Vectorised ``index``."""
        return self.table[np.mod(c, self.p), np.mod(d, self.p)]

    def act(self, matrix: Tuple[int, int, int, int]) -> np.ndarray:
        """Index of (c, d) * g for every symbol, g = (a b; c d) acting on the right."""
        a, b, c, d = matrix
        cs = np.array([s[0] for s in self.symbols], dtype=np.int64)
        ds = np.array([s[1] for s in self.symbols], dtype=np.int64)
        return self.indices(cs * a + ds * c, cs * b + ds * d)

    def scale(self, n: int) -> np.ndarray:
        """Index of [nc : nd] for every symbol."""
        return self.act((n, 0, 0, n))


def sparse_quotient(
    n_symbols: int, s_image: np.ndarray, tau_image: np.ndarray
) -> Tuple[List[int], Dict[int, Dict[int, Fraction]]]:
    """Solve the Manin relations x + xS = 0 and x + xT + xT^2 = 0 over Q.

    Returns the free symbols (ascending) and, for every symbol, its expression
    as a sparse combination of free symbols. Relations are eliminated one at a
    time, solving for the largest index with a unit coefficient (else the largest
    index), so expressions stay integral where possible and small indices stay free.
    """
    # two-term relations: x_j = -x_i for j = iS, or x = 0 when fixed by S
    rep: List[Optional[Tuple[int, int]]] = [None] * n_symbols
    for i in range(n_symbols):
        if rep[i] is not None:
            continue
        j = int(s_image[i])
        if j == i:
            rep[i] = (i, 0)
        else:
            low, high = min(i, j), max(i, j)
            rep[low] = (low, 1)
            rep[high] = (low, -1)

    def substituted(index: int) -> Tuple[int, int]:
        entry = rep[index]
        assert entry is not None
        return entry

    # three-term relations on the representatives
    relations: List[Dict[int, Fraction]] = []
    seen = set()
    for i in range(n_symbols):
        j = int(tau_image[i])
        k = int(tau_image[j])
        orbit = tuple(sorted({i, j, k}))
        if orbit in seen:
            continue
        seen.add(orbit)
        row: Dict[int, Fraction] = {}
        for member in (i, j, k):
            r, sign = substituted(member)
            if sign == 0:
                continue
            row[r] = row.get(r, Fraction(0)) + sign
        row = {key: value for key, value in row.items() if value != 0}
        if row:
            relations.append(row)

    solved: Dict[int, Dict[int, Fraction]] = {}
    occurs: Dict[int, set] = {}
    for relation in relations:
        row = dict(relation)
        for var in [v for v in row if v in solved]:
            coeff = row.pop(var, Fraction(0))
            if coeff == 0:
                continue
            for other, value in solved[var].items():
                new_value = row.get(other, Fraction(0)) + coeff * value
                if new_value == 0:
                    row.pop(other, None)
                else:
                    row[other] = new_value
        if not row:
            continue
        units = [var for var, value in row.items() if abs(value) == 1]
        pivot = max(units) if units else max(row)
        scale = -1 / row.pop(pivot)
        expression = {var: value * scale for var, value in row.items()}
        # back-substitute the new pivot into earlier solutions
        for owner in list(occurs.get(pivot, ())):
            target = solved[owner]
            coeff = target.pop(pivot, Fraction(0))
            if coeff == 0:
                continue
            for var, value in expression.items():
                new_value = target.get(var, Fraction(0)) + coeff * value
                if new_value == 0:
                    target.pop(var, None)
                    occurs.get(var, set()).discard(owner)
                else:
                    target[var] = new_value
                    occurs.setdefault(var, set()).add(owner)
        occurs.pop(pivot, None)
        solved[pivot] = expression
        for var in expression:
            occurs.setdefault(var, set()).add(pivot)

    representatives = sorted({r for r, sign in (substituted(i) for i in range(n_symbols)) if sign})
    free = [r for r in representatives if r not in solved]
    free_position = {r: pos for pos, r in enumerate(free)}

    expressions: Dict[int, Dict[int, Fraction]] = {}
    for i in range(n_symbols):
        r, sign = substituted(i)
        if sign == 0:
            expressions[i] = {}
        elif r in free_position:
            expressions[i] = {free_position[r]: Fraction(sign)}
        elif r in solved:
            expressions[i] = {
                free_position[var]: sign * value for var, value in solved[r].items()
            }
        else:
            raise InternalConsistencyError(f"symbol {i} has no expression")
    return free, expressions
