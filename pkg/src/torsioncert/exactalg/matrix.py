"""Dense exact matrices over Z, Q and prime fields.

Entries live in numpy object arrays holding Python ints or Fractions, so no
operation ever touches floating point. Elimination pivots on the first nonzero
entry in column order; kernels and echelon forms are reproducible run to run.
"""

__all__ = [
    "Ring",
    "ExactMatrix",
    "Polynomial",
    "rank_mod",
    "rank_mod_generic",
    "kernel_basis",
    "charpoly",
    "hnf",
    "hnf_with_transform",
    "hnf_transform_inverse",
    "lattice_over_identity",
    "independent_rows",
    "independent_row_indices",
    "exact_matmul",
    "integer_kernel",
    "evaluate_polynomial",
    "row_span_basis",
]

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from torsioncert.core.errors import InternalConsistencyError, InvalidInputError
from torsioncert.core.validators import InputValidator

Scalar = Union[int, Fraction]
Polynomial = Tuple[int, ...]
"""Integer polynomial as coefficients from the leading term down to the constant."""

# int64 products are safe while |a|*|b|*inner < 2**62
_INT64_SAFE = 1 << 62


class Ring(Enum):
    """Coefficient ring tag of an ExactMatrix."""

    INTEGER = "ZZ"
    RATIONAL = "QQ"
    PRIME_FIELD = "GF"


def _object_array(rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> np.ndarray:
    if len(rows) == 0:
        return np.empty((0, ncols or 0), dtype=object)
    arr = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            arr[i, j] = value
    return arr


def _normalize(value: Scalar) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(max(abs(int(v)) for v in arr.flat))


def _all_ints(arr: np.ndarray) -> bool:
    return all(isinstance(v, int) for v in arr.flat)


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Multiply two object arrays exactly, using int64 when provably safe."""
    inner = a.shape[1]
    if _all_ints(a) and _all_ints(b):
        bound = _max_abs(a) * _max_abs(b) * max(inner, 1)
        if bound < _INT64_SAFE:
            product = a.astype(np.int64) @ b.astype(np.int64)
            return product.astype(object)
    if a.shape[0] == 0 or b.shape[1] == 0 or inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64).astype(object)
    out = np.dot(a, b)
    return np.vectorize(_normalize, otypes=[object])(out)


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Immutable rectangular matrix over Z, Q or F_ell.

    Use the ``from_rows`` / ``identity`` / ``zeros`` constructors; the raw
    ``entries`` array is frozen after construction.
    """

    entries: np.ndarray
    ring: Ring = Ring.INTEGER
    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=object)
        if arr.ndim != 2:
            raise InvalidInputError(f"matrix entries must be 2-dimensional, got {arr.ndim}")
        if self.ring is Ring.PRIME_FIELD:
            InputValidator.require(InputValidator.validate_prime(self.modulus or 0, "modulus"))
            ell = int(self.modulus or 2)
            if arr.size:
                arr = np.vectorize(lambda v: int(v) % ell, otypes=[object])(arr)
        elif arr.size:
            arr = np.vectorize(_normalize, otypes=[object])(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[Scalar]],
        ncols: Optional[int] = None,
        ring: Optional[Ring] = None,
        modulus: Optional[int] = None,
    ) -> "ExactMatrix":
        """Build a matrix from a list of rows; the ring is inferred unless given."""
        arr = _object_array(rows, ncols)
        if ring is None:
            ring = Ring.INTEGER
            if any(isinstance(_normalize(v), Fraction) for v in arr.flat):
                ring = Ring.RATIONAL
        return cls(arr, ring, modulus)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], nrows: int) -> "ExactMatrix":
        """Build a matrix whose columns are the given vectors."""
        if not columns:
            return cls.zeros(nrows, 0)
        return cls.from_rows([list(col) for col in columns]).transpose()

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        """n x n identity over Z."""
        arr = np.zeros((n, n), dtype=np.int64).astype(object)
        for i in range(n):
            arr[i, i] = 1
        return cls(arr)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        """Zero matrix over Z."""
        return cls(np.zeros((nrows, ncols), dtype=np.int64).astype(object))

    # ------------------------------------------------------------------
    # Shape and access
    # ------------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (int(self.entries.shape[0]), int(self.entries.shape[1]))

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        return self.entries[index]

    def rows(self) -> List[List[Scalar]]:
        """Entries as a list of row lists."""
        return [list(row) for row in self.entries]

    def column(self, j: int) -> List[Scalar]:
        return list(self.entries[:, j])

    def flatten(self) -> List[Scalar]:
        """Row-major entries."""
        return list(self.entries.flat)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.entries.T.copy(), self.ring, self.modulus)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _result_ring(self, other: "ExactMatrix") -> Ring:
        if Ring.PRIME_FIELD in (self.ring, other.ring):
            return Ring.PRIME_FIELD
        if Ring.RATIONAL in (self.ring, other.ring):
            return Ring.RATIONAL
        return Ring.INTEGER

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise InvalidInputError(f"cannot multiply {self.shape} by {other.shape}")
        return ExactMatrix(
            exact_matmul(self.entries, other.entries),
            self._result_ring(other),
            self.modulus or other.modulus,
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise InvalidInputError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix(self.entries + other.entries, self._result_ring(other),
                           self.modulus or other.modulus)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise InvalidInputError(f"cannot subtract {other.shape} from {self.shape}")
        return ExactMatrix(self.entries - other.entries, self._result_ring(other),
                           self.modulus or other.modulus)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self.entries, self.ring, self.modulus)

    def scale(self, factor: Scalar) -> "ExactMatrix":
        """Multiply every entry by a scalar."""
        ring = self.ring
        if isinstance(_normalize(factor), Fraction) and ring is Ring.INTEGER:
            ring = Ring.RATIONAL
        return ExactMatrix(self.entries * factor, ring, self.modulus)

    def apply(self, vector: Sequence[Scalar]) -> List[Scalar]:
        """Matrix-vector product M v."""
        if len(vector) != self.ncols:
            raise InvalidInputError(f"vector of length {len(vector)} for {self.shape} matrix")
        column = _object_array([[v] for v in vector], 1)
        return [_normalize(v) for v in exact_matmul(self.entries, column)[:, 0]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(_normalize(a) == _normalize(b)
                   for a, b in zip(self.entries.flat, other.entries.flat))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows()!r}, ring={self.ring.value})"

    # ------------------------------------------------------------------
    # Predicates and conversions
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries.flat)

    def is_integral(self) -> bool:
        return all(isinstance(_normalize(v), int) for v in self.entries.flat)

    def to_integer(self) -> "ExactMatrix":
        """Return the same matrix tagged INTEGER; fails on non-integral entries."""
        if not self.is_integral():
            raise InternalConsistencyError("matrix has non-integral entries")
        return ExactMatrix(self.entries, Ring.INTEGER)

    def denominator(self) -> int:
        """Least common denominator of the entries."""
        den = 1
        for v in self.entries.flat:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        return den

    def mod(self, ell: int) -> np.ndarray:
        """Entries reduced mod ell as an int64 array (rationals need unit denominators)."""
        out = np.zeros(self.shape, dtype=np.int64)
        for (i, j), v in np.ndenumerate(self.entries):
            v = _normalize(v)
            if isinstance(v, Fraction):
                out[i, j] = (v.numerator * pow(v.denominator, -1, ell)) % ell
            else:
                out[i, j] = int(v) % ell
        return out

    # ------------------------------------------------------------------
    # Linear algebra over Q
    # ------------------------------------------------------------------

    def rref(self) -> Tuple[List[List[Fraction]], List[int]]:
        """Reduced row echelon form over Q and the pivot columns."""
        return _rref([[Fraction(v) for v in row] for row in self.entries], self.ncols)

    def rank(self) -> int:
        """Rank over Q (fraction-free Bareiss elimination for integer input)."""
        if self.ring is Ring.PRIME_FIELD:
            return rank_mod(self, self.modulus or 2)
        rows = _integral_rows(self)
        return _bareiss_rank(rows, self.ncols)

    def det(self) -> Scalar:
        """Determinant over Q via Bareiss."""
        if not self.is_square:
            raise InvalidInputError("determinant of a non-square matrix")
        den = self.denominator()
        rows = [[int(Fraction(v) * den) for v in row] for row in self.entries]
        value = _bareiss_det(rows)
        return _normalize(Fraction(value, den ** self.nrows))

    def inverse(self) -> "ExactMatrix":
        """Inverse over Q; raises InvalidInputError if singular."""
        if not self.is_square:
            raise InvalidInputError("inverse of a non-square matrix")
        n = self.nrows
        augmented = [
            [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(self.entries)
        ]
        reduced, pivots = _rref(augmented, 2 * n)
        if pivots[:n] != list(range(n)):
            raise InvalidInputError("matrix is singular")
        return ExactMatrix.from_rows([row[n:] for row in reduced[:n]], n, Ring.RATIONAL)

    def solve(self, rhs: Sequence[Scalar]) -> List[Scalar]:
        """Solve M x = rhs for square nonsingular M."""
        if not self.is_square:
            raise InvalidInputError("solve needs a square matrix")
        n = self.nrows
        augmented = [
            [Fraction(v) for v in row] + [Fraction(rhs[i])]
            for i, row in enumerate(self.entries)
        ]
        reduced, pivots = _rref(augmented, n + 1)
        if pivots[:n] != list(range(n)) or len(pivots) > n:
            raise InvalidInputError("matrix is singular")
        return [_normalize(reduced[i][n]) for i in range(n)]


# ----------------------------------------------------------------------
# Elimination kernels
# ----------------------------------------------------------------------


def _integral_rows(matrix: ExactMatrix) -> List[List[int]]:
    rows = []
    for row in matrix.entries:
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        rows.append([int(Fraction(v) * den) for v in row])
    return rows


def _rref(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    rows = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _bareiss_rank(rows: List[List[int]], ncols: int) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv = rows[rank][c]
        for i in range(rank + 1, len(rows)):
            factor = rows[i][c]
            rows[i] = [(piv * a - factor * b) // prev for a, b in zip(rows[i], rows[rank])]
        prev = piv
        rank += 1
        if rank == len(rows):
            break
    return rank


def _bareiss_det(rows: List[List[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def row_span_basis(vectors: Iterable[Sequence[Scalar]], ncols: int) -> List[List[Fraction]]:
    """Echelon basis over Q of the span of ``vectors``."""
    reduced, pivots = _rref([[Fraction(v) for v in vec] for vec in vectors], ncols)
    return reduced[: len(pivots)]


def kernel_basis(matrix: ExactMatrix) -> List[List[Fraction]]:
    """Basis of the right kernel over Q, one vector per free column.

    Example:
        >>> kernel_basis(ExactMatrix.from_rows([[1, 1, 0], [0, 0, 1]]))
        [[Fraction(-1, 1), Fraction(1, 1), Fraction(0, 1)]]
    """
    n = matrix.ncols
    reduced, pivots = matrix.rref()
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for row_index, col in enumerate(pivots):
            vec[col] = -reduced[row_index][free]
        basis.append(vec)
    return basis


# ----------------------------------------------------------------------
# Modular ranks
# ----------------------------------------------------------------------


def rank_mod_generic(arr: np.ndarray, ell: int) -> int:
    """Rank of an int64 array over F_ell by ordinary Gaussian elimination."""
    m = np.array(arr, dtype=np.int64) % ell
    nrows, ncols = m.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nonzero = np.nonzero(m[rank:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, c]), -1, ell)
        m[rank] = (m[rank] * inv) % ell
        below = m[rank + 1:, c].copy()
        if below.any():
            m[rank + 1:] = (m[rank + 1:] - np.outer(below, m[rank])) % ell
        rank += 1
    return rank


def rank_mod(matrix: Union[ExactMatrix, np.ndarray], ell: int) -> int:
    """Rank of an integer matrix reduced entrywise mod a prime ell.

    For ell = 2 the bit-packed path is used; ``rank_mod_generic`` gives the same
    answer through ordinary elimination.

    Raises:
        InvalidInputError: If ell is not prime
    """
    InputValidator.require(InputValidator.validate_prime(ell, "ell"))
    arr = matrix.mod(ell) if isinstance(matrix, ExactMatrix) else np.asarray(matrix) % ell
    if arr.size == 0:
        return 0
    if ell == 2:
        from torsioncert.exactalg.gf2 import gf2_rank, pack_rows

        return gf2_rank(pack_rows(arr))
    return rank_mod_generic(arr, ell)


# ----------------------------------------------------------------------
# Hermite normal form
# ----------------------------------------------------------------------


def hnf_with_transform(
    rows: Sequence[Sequence[int]], ncols: int
) -> Tuple[List[List[int]], List[List[int]]]:
    """Row Hermite normal form H with unimodular U such that U M = H.

    H keeps all m rows (zero rows last). Pivots are positive and entries above a
    pivot are reduced into [0, pivot).
    """
    h, u, _ = _hnf(rows, ncols, track_inverse=False)
    return h, u


def hnf_transform_inverse(
    rows: Sequence[Sequence[int]], ncols: int
) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """As ``hnf_with_transform`` and additionally V = U^-1, tracked by column operations."""
    return _hnf(rows, ncols, track_inverse=True)


def _hnf(
    rows: Sequence[Sequence[int]], ncols: int, track_inverse: bool
) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    m = len(rows)
    h = [[int(v) for v in row] for row in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    # v is stored transposed so each column operation on V is a row operation here
    vt = [[int(i == j) for j in range(m)] for i in range(m)] if track_inverse else []

    def subtract(i: int, r: int, q: int) -> None:
        h[i] = [a - q * b for a, b in zip(h[i], h[r])]
        u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        if track_inverse:
            vt[r] = [a + q * b for a, b in zip(vt[r], vt[i])]

    def swap(i: int, j: int) -> None:
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]
        if track_inverse:
            vt[i], vt[j] = vt[j], vt[i]

    def negate(i: int) -> None:
        h[i] = [-a for a in h[i]]
        u[i] = [-a for a in u[i]]
        if track_inverse:
            vt[i] = [-a for a in vt[i]]

    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            candidates = [i for i in range(r, m) if h[i][c] != 0]
            if not candidates:
                break
            pivot = min(candidates, key=lambda i: (abs(h[i][c]), i))
            if pivot != r:
                swap(r, pivot)
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    subtract(i, r, h[i][c] // h[r][c])
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            negate(r)
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                subtract(i, r, q)
        r += 1
    v = [list(col) for col in zip(*vt)] if track_inverse else []
    return h, u, v


def hnf(matrix: ExactMatrix) -> ExactMatrix:
    """Row Hermite normal form of an integer matrix, zero rows removed."""
    if not matrix.is_integral():
        raise InvalidInputError("HNF needs an integer matrix")
    h, _ = hnf_with_transform(matrix.rows(), matrix.ncols)
    nonzero = [row for row in h if any(row)]
    return ExactMatrix.from_rows(nonzero, matrix.ncols, Ring.INTEGER)


def integer_kernel(matrix: ExactMatrix) -> List[List[int]]:
    """Z-basis (saturated, HNF-reduced) of {x in Z^n : M x = 0}.

    Rational matrices are cleared of denominators row by row first.
    """
    n = matrix.ncols
    if n == 0:
        return []
    rows = _integral_rows(matrix)
    # Drop redundant rows first so the transpose stays short.
    reduced = independent_rows(rows, n)
    if not reduced:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    transposed = [[row[j] for row in reduced] for j in range(n)]
    h, u = hnf_with_transform(transposed, len(reduced))
    kernel = [u[i] for i in range(n) if not any(h[i])]
    if not kernel:
        return []
    hk, _ = hnf_with_transform(kernel, n)
    return [row for row in hk if any(row)]


def lattice_over_identity(rows: Sequence[Sequence[int]], denominator: int, n: int) -> List[List[int]]:
    """Upper-triangular basis of the lattice Z^n + (1/D) span(rows), scaled by D.

    The lattice contains D Z^n once scaled, so every entry right of a pivot is
    kept reduced mod D. Returns n rows; row i has its pivot in column i.
    """
    big = int(denominator)
    basis = [[big if i == j else 0 for j in range(n)] for i in range(n)]
    if big == 1:
        return basis
    for raw in rows:
        vec = [int(v) % big for v in raw]
        for i in range(n):
            if vec[i] == 0:
                continue
            pivot_row = basis[i]
            a, b = pivot_row[i], vec[i]
            g, x, y = _egcd(a, b)
            combined = [(x * s + y * t) for s, t in zip(pivot_row, vec)]
            vec = [((a // g) * t - (b // g) * s) for s, t in zip(pivot_row, vec)]
            basis[i] = [combined[j] if j <= i else combined[j] % big for j in range(n)]
            vec = [0 if j <= i else vec[j] % big for j in range(n)]
    return basis


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) = x a + y b and g > 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def independent_rows(rows: List[List[int]], ncols: int) -> List[List[int]]:
    """A maximal Q-independent subset of integer rows, in input order."""
    return [rows[i] for i in independent_row_indices(rows, ncols)]


def independent_row_indices(rows: Sequence[Sequence[Scalar]], ncols: int) -> List[int]:
    """Indices of the greedy maximal Q-independent subset of ``rows``."""
    kept: List[int] = []
    echelon: List[List[Fraction]] = []
    pivots: List[int] = []
    for index, row in enumerate(rows):
        vec = [Fraction(v) for v in row]
        for basis_row, col in zip(echelon, pivots):
            if vec[col] != 0:
                factor = vec[col]
                vec = [a - factor * b for a, b in zip(vec, basis_row)]
        lead = next((j for j in range(ncols) if vec[j] != 0), None)
        if lead is None:
            continue
        inv = 1 / vec[lead]
        vec = [v * inv for v in vec]
        for k, basis_row in enumerate(echelon):
            if basis_row[lead] != 0:
                factor = basis_row[lead]
                echelon[k] = [a - factor * b for a, b in zip(basis_row, vec)]
        echelon.append(vec)
        pivots.append(lead)
        kept.append(index)
        if len(kept) == ncols:
            break
    return kept


# ----------------------------------------------------------------------
# Characteristic polynomials
# ----------------------------------------------------------------------


def charpoly(matrix: ExactMatrix) -> Polynomial:
    """Characteristic polynomial det(x I - M), leading coefficient first.

    Reduces to upper Hessenberg form over Q and runs the Hessenberg recurrence;
    integer input yields integer coefficients.

    Raises:
        InvalidInputError: If the matrix is not square
    """
    if not matrix.is_square:
        raise InvalidInputError(f"charpoly of a non-square {matrix.shape} matrix")
    n = matrix.nrows
    h = [[Fraction(v) for v in row] for row in matrix.entries]

    for m in range(1, n - 1):
        pivot = next((i for i in range(m, n) if h[i][m - 1] != 0), None)
        if pivot is None:
            continue
        if pivot != m:
            h[m], h[pivot] = h[pivot], h[m]
            for row in h:
                row[m], row[pivot] = row[pivot], row[m]
        t = h[m][m - 1]
        for i in range(m + 1, n):
            u = h[i][m - 1] / t
            if u == 0:
                continue
            h[i] = [a - u * b for a, b in zip(h[i], h[m])]
            for row in h:
                row[m] += u * row[i]

    # p[k] holds the charpoly of the leading k x k block, lowest degree first
    p: List[List[Fraction]] = [[Fraction(1)]]
    for m in range(1, n + 1):
        prev = p[m - 1]
        current = [Fraction(0)] + prev  # x * p_{m-1}
        for i, c in enumerate(prev):
            current[i] -= h[m - 1][m - 1] * c
        t = Fraction(1)
        for i in range(1, m):
            t *= h[m - i][m - i - 1]
            coeff = t * h[m - i - 1][m - 1]
            for j, c in enumerate(p[m - i - 1]):
                current[j] -= coeff * c
        p.append(current)

    coefficients = p[n]
    if any(c.denominator != 1 for c in coefficients) and matrix.is_integral():
        raise InternalConsistencyError("integer matrix produced a non-integral charpoly")
    return tuple(_normalize(c) for c in reversed(coefficients))  # type: ignore[misc]


def evaluate_polynomial(poly: Sequence[Scalar], matrix: ExactMatrix) -> ExactMatrix:
    """Evaluate a polynomial (leading coefficient first) at a square matrix by Horner."""
    if not matrix.is_square:
        raise InvalidInputError("polynomial evaluation needs a square matrix")
    n = matrix.nrows
    result = ExactMatrix.zeros(n, n)
    identity = ExactMatrix.identity(n)
    for coefficient in poly:
        result = result @ matrix + identity.scale(coefficient)
    return result
