"""
Exact dense linear algebra over a prime field GF(p).
Gaussian elimination on numpy int64 arrays with canonical representatives in [0, p).
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime

from errors import DimensionError, IdealInputError

_INT64_MAX = np.iinfo(np.int64).max
_MAX_PRIME = 2 ** 31


@dataclass(frozen=True)
class FieldPrime:
    """The prime field GF(p)."""

    p: int

    def __post_init__(self) -> None:
        if isinstance(self.p, bool) or not isinstance(self.p, (int, np.integer)):
            raise IdealInputError(f"Field modulus must be an integer, got {self.p!r}")
        if not isprime(int(self.p)):
            raise IdealInputError(f"Field modulus {self.p} is not prime")
        if self.p >= _MAX_PRIME:
            raise IdealInputError(f"Field modulus {self.p} does not fit a machine word")
        object.__setattr__(self, "p", int(self.p))

    def reduce(self, values) -> np.ndarray:
        """Reduce integers to canonical representatives."""
        return np.mod(np.asarray(values, dtype=np.int64), self.p)

    def inverse(self, a: int) -> int:
        """Multiplicative inverse by Fermat's little theorem."""
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def __str__(self) -> str:
        return f"GF({self.p})"


class MatrixGF:
    """
    Dense matrix over GF(p).

    Entries are stored as a read-only int64 array, always reduced modulo p.
    Zero-row and zero-column matrices are allowed.
    """

    __slots__ = ("entries", "field")

    def __init__(self, entries, field: FieldPrime, cols: Optional[int] = None):
        arr = np.array(entries, dtype=np.int64)
        if arr.size == 0:
            n_rows = arr.shape[0] if arr.ndim == 2 else 0
            width = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
            arr = np.zeros((n_rows, width), dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise DimensionError(f"Expected a 2-dimensional array, got shape {arr.shape}")
        if cols is not None and arr.shape[1] != cols:
            raise DimensionError(f"Expected {cols} columns, got {arr.shape[1]}")
        arr = np.mod(arr, field.p)
        arr.setflags(write=False)
        self.entries = arr
        self.field = field

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldPrime) -> "MatrixGF":
        """The zero matrix with the given shape."""
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def identity(cls, n: int, field: FieldPrime) -> "MatrixGF":
        """The n x n identity matrix."""
        return cls(np.eye(n, dtype=np.int64), field)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def T(self) -> "MatrixGF":
        return MatrixGF(self.entries.T, self.field)

    @property
    def rank(self) -> int:
        """Rank over GF(p)."""
        return len(rref(self.entries, self.p)[1])

    def vstack(self, other: "MatrixGF") -> "MatrixGF":
        """Stack the rows of two matrices of the same width."""
        _check_same_width(self, other)
        return MatrixGF(np.vstack([self.entries, other.entries]), self.field, cols=self.cols)

    def tolist(self) -> List[List[int]]:
        return self.entries.tolist()

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        """Matrix product reduced mod p."""
        if self.field != other.field:
            raise DimensionError("Matrices live over different fields")
        if self.cols != other.rows:
            raise DimensionError(f"Cannot multiply {self.shape} by {other.shape}")
        return MatrixGF(matmul_mod(self.entries, other.entries, self.p), self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.entries, other.entries)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"MatrixGF({self.tolist()}, {self.field})"


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """
    Multiply two reduced int64 arrays modulo p without overflowing.

    The inner dimension is split into chunks small enough that every
    partial sum of products stays below the int64 limit.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1]
    step = max(1, (_INT64_MAX - p) // max(1, (p - 1) ** 2))
    if step >= inner:
        return np.mod(a @ b, p)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(0, inner, step):
        out = np.mod(out + a[:, k:k + step] @ b[k:k + step], p)
    return out


def rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of a reduced int64 array.

    Args:
        a: 2-D array with entries in [0, p)
        p: Prime modulus

    Returns:
        (nonzero rows of the reduced form, pivot column indices)
    """
    m = np.array(a, dtype=np.int64) % p
    n_rows, n_cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nonzero = np.flatnonzero(m[r:, c])
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r, c:] = (m[r, c:] * inv) % p
        column = m[:, c].copy()
        column[r] = 0
        targets = np.flatnonzero(column)
        if targets.size:
            m[np.ix_(targets, np.arange(c, n_cols))] = (
                m[targets, c:] - np.outer(column[targets], m[r, c:]) % p
            ) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def reduce_modulo(v: np.ndarray, basis: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    """Normal form of the rows of v modulo the row space of an RREF basis."""
    v = np.atleast_2d(np.asarray(v, dtype=np.int64))
    if len(pivots) == 0:
        return np.mod(v, p)
    coeffs = v[:, list(pivots)]
    return np.mod(v - matmul_mod(coeffs, basis, p), p)


def null_space(a: np.ndarray, p: int) -> np.ndarray:
    """Right null space of an int64 array, one basis vector per row."""
    n_cols = a.shape[1]
    reduced, pivots = rref(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = np.zeros((len(free), n_cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        if pivots:
            basis[i, pivots] = (-reduced[:, f]) % p
    return basis


def row_reduce(M: MatrixGF) -> Tuple[int, MatrixGF]:
    """Return the rank and the reduced row echelon form of M."""
    reduced, pivots = rref(M.entries, M.p)
    return len(pivots), MatrixGF(reduced, M.field, cols=M.cols)


def kernel_basis(M: MatrixGF) -> MatrixGF:
    """Basis of the right null space {v : M v = 0}, as rows."""
    return MatrixGF(null_space(M.entries, M.p), M.field, cols=M.cols)


def left_kernel_basis(M: MatrixGF) -> MatrixGF:
    """Basis of {v : v M = 0}, as rows."""
    return MatrixGF(null_space(M.entries.T, M.p), M.field, cols=M.rows)


def subspace_intersect(U: MatrixGF, V: MatrixGF) -> MatrixGF:
    """Row space intersection, returned in reduced row echelon form."""
    _check_same_width(U, V)
    if U.rows == 0 or V.rows == 0:
        return MatrixGF.zeros(0, U.cols, U.field)
    p = U.p
    stacked = np.vstack([U.entries, V.entries])
    # (a, b) with aU + bV = 0 gives aU in both row spaces
    relations = null_space(stacked.T, p)
    common = matmul_mod(relations[:, :U.rows], U.entries, p)
    reduced, _ = rref(common, p)
    return MatrixGF(reduced, U.field, cols=U.cols)


def subspace_sum(U: MatrixGF, V: MatrixGF) -> MatrixGF:
    """Row space sum, returned in reduced row echelon form."""
    _check_same_width(U, V)
    return row_reduce(U.vstack(V))[1]


def subspace_contains(U: MatrixGF, v: Union[MatrixGF, Sequence[int], np.ndarray]) -> bool:
    """Check whether every row of v lies in the row space of U."""
    w = v if isinstance(v, MatrixGF) else MatrixGF(v, U.field, cols=U.cols)
    _check_same_width(U, w)
    return U.rank == U.vstack(w).rank


def solve(M: MatrixGF, b: Iterable[int]) -> Optional[MatrixGF]:
    """One solution x of M x = b as a 1-row matrix, or None if inconsistent."""
    rhs = M.field.reduce(list(b)).reshape(-1)
    if rhs.size != M.rows:
        raise DimensionError(f"Right-hand side has length {rhs.size}, expected {M.rows}")
    augmented = np.hstack([M.entries, rhs.reshape(-1, 1)])
    reduced, pivots = rref(augmented, M.p)
    if pivots and pivots[-1] == M.cols:
        return None
    x = np.zeros(M.cols, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = reduced[row, -1]
    return MatrixGF(x.reshape(1, -1), M.field, cols=M.cols)


def _check_same_width(U: MatrixGF, V: MatrixGF) -> None:
    if U.cols != V.cols:
        raise DimensionError(f"Column counts differ: {U.cols} vs {V.cols}")
    if U.field != V.field:
        raise DimensionError(f"Matrices live over different fields: {U.field} vs {V.field}")
