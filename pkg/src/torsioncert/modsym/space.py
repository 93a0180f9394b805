"""Presented relative homology H1(X_H, cusps; Z) and its cuspidal sublattice.

Coordinates
-----------
A space is built from the Manin relations in three layers:

* *free* coordinates: the symbols left free by ``sparse_quotient``;
* *lattice* coordinates: a Z-basis of the image of Z[symbols], so every symbol
  has an integer coordinate row;
* *adapted* coordinates: a unimodular change of lattice basis whose first 2g
  vectors span the cuspidal sublattice (kernel of the boundary map).

Vectors are rows in adapted coordinates. Operators built on the relative
space act on rows (``v @ M``); the cuspidal blocks handed out by ``hecke`` /
``diamond`` / ``star`` are transposed so they act on column vectors.
"""

from fractions import Fraction
from math import lcm
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from torsioncert.core.errors import InternalConsistencyError, InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.exactalg.matrix import (
    exact_matmul,
    hnf_transform_inverse,
    lattice_over_identity,
)
from torsioncert.modsym.manin import ManinSymbolList, heilbronn_merel, sparse_quotient

logger = get_logger(__name__)

Cusp = Tuple[str, int]
"""Cusp class label: ("inf", a) for a/c with p | c, ("zero", c) otherwise; a, c coset minima."""

Rational = Union[int, Fraction]
PathEnd = Optional[Fraction]
"""A cusp as a rational number, or None for infinity."""


def _int_array(rows: Any, shape: Tuple[int, int]) -> np.ndarray:
    arr = np.zeros(shape, dtype=np.int64).astype(object)
    if len(rows):
        arr[:, :] = np.array(rows, dtype=object).reshape(shape)
    return arr


def _exact_divide(arr: np.ndarray, denominator: int, what: str) -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    for index, value in np.ndenumerate(arr):
        q, r = divmod(int(value), denominator)
        if r:
            raise InternalConsistencyError(f"{what} is not integral")
        out[index] = q
    return out


def convergent_symbols(x: Fraction) -> List[Tuple[int, int]]:
    """Manin symbols (c, d) whose sum is the modular symbol {0, x}.

    With convergents p_j/q_j of x (p_-2/q_-2 = 0/1, p_-1/q_-1 = 1/0) the path
    splits as the sum over j >= -1 of [(-1)^(j-1) q_j : q_(j-1)].
    """
    a, b = x.numerator, x.denominator
    q_prev2, q_prev1 = 1, 0
    out = [(0, 1)]
    j = 0
    while b:
        partial, remainder = divmod(a, b)
        q_j = partial * q_prev1 + q_prev2
        sign = -1 if j % 2 == 0 else 1
        out.append((sign * q_j, q_prev1))
        q_prev2, q_prev1 = q_prev1, q_j
        a, b = b, remainder
        j += 1
    return out


class ModularSymbolSpace:
    """Manin presentation of H1(X_H(p), cusps; Z) with the boundary map.

    Args:
        symbols: Enumerated Manin symbols for the level
    """

    def __init__(self, symbols: ManinSymbolList) -> None:
        self.symbols = symbols
        self.p = symbols.p
        self._operators: Dict[Tuple[str, int], np.ndarray] = {}
        self._build_cusps()
        self._build_presentation()
        self._build_adapted_basis()
        logger.debug(
            "space p=%s |+-H|=%s: rank %s, cuspidal %s, cusps %s",
            self.p,
            len(symbols.units),
            self.rank,
            self.cuspidal_rank,
            len(self.cusps),
        )

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def _build_cusps(self) -> None:
        p = self.p
        self.coset_of = np.full(p, -1, dtype=np.int64)
        reps: List[int] = []
        for a in range(1, p):
            if self.coset_of[a] >= 0:
                continue
            for h in self.symbols.units:
                self.coset_of[(a * h) % p] = len(reps)
            reps.append(a)
        self.coset_reps: Tuple[int, ...] = tuple(reps)
        self.cusps: List[Cusp] = [("inf", a) for a in reps] + [("zero", c) for c in reps]

    def cusp_index(self, cusp: Cusp) -> int:
        kind, value = cusp
        coset = int(self.coset_of[value % self.p])
        if coset < 0:
            raise InvalidInputError(f"{value} is not a unit mod {self.p}")
        return coset if kind == "inf" else len(self.coset_reps) + coset

    def _symbol_boundary(self, c: int, d: int) -> np.ndarray:
        """Boundary of [c:d] = {b/d, a/c} as a cusp vector."""
        p = self.p
        c, d = c % p, d % p
        out = np.zeros(len(self.cusps), dtype=np.int64)
        end = ("zero", c) if c else ("inf", pow(d, -1, p))
        start = ("zero", d) if d else ("inf", (-pow(c, -1, p)) % p)
        out[self.cusp_index(end)] += 1
        out[self.cusp_index(start)] -= 1
        return out

    def _build_presentation(self) -> None:
        s_image = self.symbols.act((0, -1, 1, 0))
        tau_image = self.symbols.act((0, -1, 1, -1))
        free, expressions = sparse_quotient(len(self.symbols), s_image, tau_image)
        self.free: List[int] = free
        n = len(free)
        n_sym = len(self.symbols)

        self.denominator = lcm(
            1, *(value.denominator for e in expressions.values() for value in e.values())
        )

        scaled = np.zeros((n_sym, n), dtype=np.int64).astype(object)
        for i, expression in expressions.items():
            for j, value in expression.items():
                scaled[i, j] = int(value * self.denominator)

        fractional = [row for row in scaled if any(int(v) % self.denominator for v in row)]
        # rows of the lattice basis in free coordinates, scaled by the denominator
        self.lattice = _int_array(lattice_over_identity(fractional, self.denominator, n), (n, n))
        if self.denominator == 1:
            self.symbol_coords = scaled
        else:
            self.symbol_coords = self._free_to_lattice(scaled)

        free_boundaries = [self._symbol_boundary(*self.symbols.symbols[f]) for f in free]
        boundary_free = _int_array(free_boundaries, (n, len(self.cusps)))
        self.boundary_lattice = _exact_divide(
            exact_matmul(self.lattice, boundary_free), self.denominator, "lattice boundary"
        )

    def _free_to_lattice(self, scaled_rows: np.ndarray) -> np.ndarray:
        """Convert rows of free coordinates (scaled by the denominator) to lattice coordinates."""
        n = len(self.free)
        out = np.zeros((scaled_rows.shape[0], n), dtype=np.int64).astype(object)
        # lattice is upper triangular: solve x L = row by forward substitution
        for r, row in enumerate(scaled_rows):
            residual = [Fraction(int(v)) for v in row]
            for i in range(n):
                coeff = residual[i] / int(self.lattice[i, i])
                if coeff.denominator != 1:
                    raise InternalConsistencyError("symbol outside the presented lattice")
                out[r, i] = int(coeff)
                if coeff:
                    for j in range(i, n):
                        residual[j] -= coeff * int(self.lattice[i, j])
        return out

    def _build_adapted_basis(self) -> None:
        n = len(self.free)
        s = len(self.cusps)
        h, u, v = hnf_transform_inverse(self.boundary_lattice.tolist(), s)
        image_rank = sum(1 for row in h if any(row))
        self.image_rank = image_rank
        order = list(range(image_rank, n)) + list(range(image_rank))
        self.adapted = _int_array([u[i] for i in order], (n, n))
        self.adapted_inverse = _int_array([[row[i] for i in order] for row in v], (n, n))
        self.cuspidal_rank = n - image_rank
        self.boundary_adapted = exact_matmul(self.adapted, self.boundary_lattice)
        if any(self.boundary_adapted[: self.cuspidal_rank].flat):
            raise InternalConsistencyError("adapted basis does not start with the cuspidal kernel")
        self.symbol_adapted = exact_matmul(self.symbol_coords, self.adapted_inverse)

    # ------------------------------------------------------------------
    # Shape
    # ------------------------------------------------------------------

    @property
    def rank(self) -> int:
        """Rank of the relative homology lattice."""
        return len(self.free)

    @property
    def genus(self) -> int:
        return self.cuspidal_rank // 2

    @property
    def is_gamma0(self) -> bool:
        return self.symbols.is_gamma0

    # ------------------------------------------------------------------
    # Vectors
    # ------------------------------------------------------------------

    def zero_vector(self) -> np.ndarray:
        return np.zeros(self.rank, dtype=np.int64).astype(object)

    def symbol_vector(self, c: int, d: int) -> np.ndarray:
        """Adapted coordinates of [c:d]; zero when (c, d) = (0, 0) mod p."""
        index = self.symbols.index(c, d)
        if index < 0:
            return self.zero_vector()
        return self.symbol_adapted[index].copy()

    def path_vector(self, start: PathEnd, end: PathEnd) -> np.ndarray:
        """The modular symbol {start, end}; None stands for infinity."""
        return self._from_zero(end) - self._from_zero(start)

    def _from_zero(self, x: PathEnd) -> np.ndarray:
        if x is None:
            return self.symbol_vector(0, 1)
        total = self.zero_vector()
        for c, d in convergent_symbols(Fraction(x)):
            total = total + self.symbol_vector(c, d)
        return total

    def boundary(self, vector: Sequence[Rational]) -> np.ndarray:
        """Cusp-coefficient vector of the boundary, indexed like ``cusps``."""
        row = np.array(list(vector), dtype=object).reshape(1, -1)
        return exact_matmul(row, self.boundary_adapted)[0]

    def is_cuspidal(self, vector: Sequence[Rational]) -> bool:
        return not any(v != 0 for v in list(vector)[self.cuspidal_rank:])

    def cuspidal_part(self, vector: Sequence[Rational]) -> List[Rational]:
        """Cuspidal coordinates of a vector with zero boundary.

        Raises:
            InvalidInputError: If the vector has nonzero boundary
        """
        values = list(vector)
        if not self.is_cuspidal(values):
            raise InvalidInputError("vector is not cuspidal")
        return values[: self.cuspidal_rank]

    def embed_cuspidal(self, coords: Sequence[Rational]) -> np.ndarray:
        """Adapted coordinates of a cuspidal vector given by its cuspidal coordinates."""
        out = np.zeros(self.rank, dtype=object)
        out[: self.cuspidal_rank] = list(coords)
        return out

    # ------------------------------------------------------------------
    # Operators
    # ------------------------------------------------------------------

    def _counts(self, images: np.ndarray) -> np.ndarray:
        """Count matrix K (free x symbols) from an index array (free x k), -1 dropped."""
        n = len(self.free)
        counts = np.zeros((n, len(self.symbols)), dtype=np.int64)
        rows = np.repeat(np.arange(n), images.shape[1])
        flat = images.reshape(-1)
        keep = flat >= 0
        np.add.at(counts, (rows[keep], flat[keep]), 1)
        return counts

    def _relative_from_counts(self, counts: np.ndarray) -> np.ndarray:
        """Adapted row-convention matrix of the operator sending free j to sum_i K[j,i] [i]."""
        # images of the free generators in lattice coordinates
        images = exact_matmul(counts.astype(object), self.symbol_coords)
        if self.denominator != 1:
            # lattice basis vector i is sum_j lattice[i, j] / denominator times free generator j
            images = _exact_divide(
                exact_matmul(self.lattice, images), self.denominator, "operator"
            )
        return exact_matmul(exact_matmul(self.adapted, images), self.adapted_inverse)

    def _free_pairs(self) -> Tuple[np.ndarray, np.ndarray]:
        pairs = np.array([self.symbols.symbols[f] for f in self.free], dtype=np.int64)
        if pairs.size == 0:
            pairs = np.zeros((0, 2), dtype=np.int64)
        return pairs[:, 0], pairs[:, 1]

    def relative_operator(self, kind: str, n: int) -> np.ndarray:
        """Row-convention matrix on the full adapted space.

        ``kind`` is "T" (Hecke via Merel's Heilbronn matrices), "D" (diamond
        [c:d] -> [nc:nd]) or "star" ([c:d] -> [-c:d]).
        """
        key = (kind, n)
        if key in self._operators:
            return self._operators[key]
        cs, ds = self._free_pairs()
        if kind == "T":
            if n < 1:
                raise InvalidInputError(f"Hecke index must be positive, got {n}")
            h = heilbronn_merel(n)
            new_c = np.outer(cs, h[:, 0]) + np.outer(ds, h[:, 2])
            new_d = np.outer(cs, h[:, 1]) + np.outer(ds, h[:, 3])
        elif kind == "D":
            if n % self.p == 0:
                raise InvalidInputError(f"diamond <{n}> needs gcd({n}, {self.p}) = 1")
            new_c, new_d = (cs * n).reshape(-1, 1), (ds * n).reshape(-1, 1)
        elif kind == "star":
            new_c, new_d = (-cs).reshape(-1, 1), ds.reshape(-1, 1)
        else:
            raise InvalidInputError(f"unknown operator kind {kind!r}")
        images = self.symbols.indices(new_c, new_d)
        matrix = self._relative_from_counts(self._counts(images))
        c = self.cuspidal_rank
        if any(matrix[:c, c:].flat):
            raise InternalConsistencyError(f"{kind}{n} does not preserve the cuspidal lattice")
        matrix.flags.writeable = False
        self._operators[key] = matrix
        logger.debug("p=%s: built %s_%s on rank %s", self.p, kind, n, self.rank)
        return matrix

    def _cuspidal_block(self, kind: str, n: int) -> np.ndarray:
        c = self.cuspidal_rank
        return self.relative_operator(kind, n)[:c, :c].T.copy()

    def hecke(self, n: int) -> np.ndarray:
        """T_n on the cuspidal lattice, acting on column vectors."""
        return self._cuspidal_block("T", n)

    def diamond(self, n: int) -> np.ndarray:
        """<n> on the cuspidal lattice, acting on column vectors."""
        return self._cuspidal_block("D", n % self.p)

    def star(self) -> np.ndarray:
        """The involution induced by z -> -conj(z) on the cuspidal lattice."""
        return self._cuspidal_block("star", -1)

    def boundary_block(self, kind: str, n: int) -> np.ndarray:
        """Action on the relative quotient (boundary image), row convention."""
        c = self.cuspidal_rank
        return self.relative_operator(kind, n)[c:, c:].copy()

    def apply(self, matrix: np.ndarray, vector: Sequence[Rational]) -> np.ndarray:
        """Apply a row-convention relative operator to an adapted vector."""
        row = np.array(list(vector), dtype=object).reshape(1, -1)
        return exact_matmul(row, matrix)[0]

    @cached_property
    def lambda_vectors(self) -> np.ndarray:
        """Row k holds lambda(k) = [k:1] for k = 0..p-1."""
        rows = [self.symbol_vector(k, 1) for k in range(self.p)]
        return np.array(rows, dtype=object).reshape(self.p, self.rank)

    # ------------------------------------------------------------------
    # Cache payload
    # ------------------------------------------------------------------

    def basis_digest_source(self) -> str:
        """Canonical text of the presentation, hashed into cache headers."""
        parts = [
            f"p={self.p}",
            f"units={sorted(self.symbols.units)}",
            f"free={self.free}",
            f"denominator={self.denominator}",
            f"lattice={self.lattice.tolist()}",
            f"adapted={self.adapted.tolist()}",
        ]
        return "\n".join(parts)

    def operator_payload(self) -> Dict[str, List[List[int]]]:
        """Built relative operators, keyed "T:5", "D:3", ..."""
        return {
            f"{kind}:{n}": [[int(v) for v in row] for row in matrix]
            for (kind, n), matrix in sorted(self._operators.items())
        }

    def load_operators(self, payload: Dict[str, List[List[int]]]) -> None:
        """Install operators read back from a cache file."""
        for key, rows in payload.items():
            kind, n = key.split(":")
            matrix = _int_array(rows, (self.rank, self.rank))
            matrix.flags.writeable = False
            self._operators[(kind, int(n))] = matrix
