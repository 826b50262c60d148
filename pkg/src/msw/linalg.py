"""Exact scalar, vector and matrix arithmetic over prime fields GF(p).

Scalars are ints in the canonical range [0, p).  Matrices carry their field
and a small dense int64 numpy array; every operation reduces mod p, so all
arithmetic is exact for p up to 2**16.  Values are immutable after
construction and safe to share between workers.

Elimination is deterministic: leftmost pivot column first, topmost usable
row first, pivot normalized to 1, full reduction above and below.  This
makes every reduced echelon basis produced here reproducible across runs
and platforms.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    NotSquareError,
    ShapeMismatchError,
    SingularMatrixError,
)

MAX_PRIME = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(p) with 2 <= p <= 2**16."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int):
            raise TypeError(f"modulus must be an int, got {type(self.p).__name__}")
        if not (2 <= self.p <= MAX_PRIME) or not is_prime(self.p):
            raise ValueError(f"modulus must be a prime in [2, {MAX_PRIME}], got {self.p}")

    def inverse(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def __str__(self) -> str:
        return f"GF({self.p})"


@functools.lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """Table t with t[a] = a**-1 mod p for a in [1, p); t[0] = 0."""
    t = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        t[a] = pow(a, p - 2, p)
    t.setflags(write=False)
    return t


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class Matrix:
    """Immutable dense m x n matrix over GF(p)."""

    __slots__ = ("field", "_data")

    def __init__(self, field: FieldSpec, data):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ShapeMismatchError(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        self.field = field
        self._data = _freeze(arr % field.p)

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, field: FieldSpec, m: int, n: int) -> "Matrix":
        return cls(field, np.zeros((m, n), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "Matrix":
        return cls(field, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    # -- shape -----------------------------------------------------------
    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not self._data.any()

    def vec(self) -> np.ndarray:
        """Row-major vectorization (a fresh 1-d array)."""
        return self._data.reshape(-1).copy()

    # -- arithmetic --------------------------------------------------------
    def _check_same_shape(self, other: "Matrix"):
        if self.field != other.field or self.shape != other.shape:
            raise ShapeMismatchError(
                f"operands differ: {self.field} {self.shape} vs {other.field} {other.shape}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.field, self._data + other._data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.field, self._data - other._data)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, -self._data)

    def scale(self, c: int) -> "Matrix":
        return Matrix(self.field, self._data * (c % self.field.p))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.cols != other.rows:
            raise ShapeMismatchError(
                f"cannot multiply {self.shape} by {other.shape} over {self.field}"
            )
        return Matrix(self.field, (self._data @ other._data) % self.field.p)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Matrix-vector product over GF(p)."""
        x = np.asarray(x, dtype=np.int64) % self.field.p
        return (self._data @ x) % self.field.p

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self._data.T)

    # -- identity ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self._data, other._data)
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.shape, self._data.tobytes()))

    def __getitem__(self, key):
        return self._data[key]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self._data)
        return f"Matrix({self.field}, [{body}])"

    def to_lists(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self._data]


# ---------------------------------------------------------------------------
# elimination on raw arrays
# ---------------------------------------------------------------------------

def rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, int, tuple[int, ...], np.ndarray]:
    """Reduced row echelon form of an int array mod p.

    Returns (R, rank, pivots, T) with R = T @ a mod p and T invertible.
    """
    r = np.array(a, dtype=np.int64) % p
    m, n = r.shape
    t = np.eye(m, dtype=np.int64)
    inv = inverse_table(p)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
            t[[row, piv]] = t[[piv, row]]
        f = inv[r[row, col]]
        r[row] = (r[row] * f) % p
        t[row] = (t[row] * f) % p
        mask = r[:, col].copy()
        mask[row] = 0
        hit = np.nonzero(mask)[0]
        if hit.size:
            r[hit] = (r[hit] - np.outer(mask[hit], r[row])) % p
            t[hit] = (t[hit] - np.outer(mask[hit], t[row])) % p
        pivots.append(col)
        row += 1
    return r, row, tuple(pivots), t


def row_space_array(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (RREF rows, zero rows dropped) of the row space."""
    r, rank, _, _ = rref_array(a, p)
    return r[:rank]


def kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical RREF basis of {x : a @ x = 0 mod p}, shape (n - rank, n)."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    r, rank, pivots, _ = rref_array(a, p)
    free = [c for c in range(n) if c not in set(pivots)]
    if not free:
        return np.zeros((0, n), dtype=np.int64)
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-r[i, f]) % p
    return row_space_array(basis, p)


def in_row_space(rows: np.ndarray, v: np.ndarray, p: int) -> bool:
    """Membership of v in the span of `rows` (rows need not be canonical)."""
    if not (np.asarray(v) % p).any():
        return True
    if rows.shape[0] == 0:
        return False
    stacked = np.vstack([rows, np.asarray(v, dtype=np.int64).reshape(1, -1)])
    return rref_array(rows, p)[1] == rref_array(stacked, p)[1]


def complete_to_invertible(rows: np.ndarray, n: int, p: int) -> np.ndarray:
    """Extend independent rows to an invertible n x n matrix.

    The extension appends standard basis vectors, lowest index first, so
    the result is deterministic.
    """
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, n) % p
    out = [rows[i] for i in range(rows.shape[0])]
    state = row_space_array(rows, p) if rows.shape[0] else np.zeros((0, n), dtype=np.int64)
    for j in range(n):
        if state.shape[0] == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[j] = 1
        if not in_row_space(state, e, p):
            out.append(e)
            state = row_space_array(np.vstack([state, e]), p)
    if len(out) != n:
        raise SingularMatrixError("rows were not linearly independent")
    return np.stack(out)


# ---------------------------------------------------------------------------
# vector subspaces
# ---------------------------------------------------------------------------

class VectorSubspace:
    """Subspace of GF(p)^n held as a canonical RREF basis.

    Two spans of the same set of vectors produce identical basis arrays, so
    equality is an array comparison.
    """

    __slots__ = ("field", "ambient", "_basis")

    def __init__(self, field: FieldSpec, ambient: int, canonical_basis: np.ndarray):
        self.field = field
        self.ambient = int(ambient)
        arr = np.asarray(canonical_basis, dtype=np.int64)
        count = arr.shape[0] if arr.ndim >= 2 else (1 if arr.size else 0)
        self._basis = _freeze(arr.reshape(count, ambient))

    @classmethod
    def span(cls, field: FieldSpec, vectors, ambient: Optional[int] = None) -> "VectorSubspace":
        vecs = [np.asarray(v, dtype=np.int64) % field.p for v in vectors]
        if ambient is None:
            if not vecs:
                raise ShapeMismatchError("cannot infer ambient dimension from no vectors")
            ambient = len(vecs[0])
        if any(len(v) != ambient for v in vecs):
            raise ShapeMismatchError("vectors have mixed lengths")
        if not vecs:
            return cls.zero(field, ambient)
        return cls(field, ambient, row_space_array(np.stack(vecs), field.p))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "VectorSubspace":
        return cls(field, n, np.zeros((0, n), dtype=np.int64))

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "VectorSubspace":
        return cls(field, n, np.eye(n, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self._basis.shape[0]

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    def basis_vectors(self) -> list[np.ndarray]:
        return [self._basis[i].copy() for i in range(self.dim)]

    def contains(self, v: np.ndarray) -> bool:
        return in_row_space(self._basis, np.asarray(v, dtype=np.int64) % self.field.p, self.field.p)

    def contains_subspace(self, other: "VectorSubspace") -> bool:
        return all(self.contains(other._basis[i]) for i in range(other.dim))

    def annihilator(self) -> "VectorSubspace":
        """Functionals vanishing on this subspace, dim = ambient - dim."""
        return VectorSubspace(self.field, self.ambient, kernel_array(self._basis, self.field.p))

    def add(self, other: "VectorSubspace") -> "VectorSubspace":
        if self.field != other.field or self.ambient != other.ambient:
            raise ShapeMismatchError("subspaces live in different spaces")
        stacked = np.vstack([self._basis, other._basis])
        return VectorSubspace(self.field, self.ambient, row_space_array(stacked, self.field.p))

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorSubspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient == other.ambient
            and self._basis.shape == other._basis.shape
            and np.array_equal(self._basis, other._basis)
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.ambient, self._basis.tobytes()))

    def __repr__(self) -> str:
        return f"VectorSubspace({self.field}, dim {self.dim} of {self.ambient})"


# ---------------------------------------------------------------------------
# single-matrix operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RrefResult:
    reduced: Matrix
    rank: int
    pivots: tuple[int, ...]
    transform: Matrix


def rref(a: Matrix) -> RrefResult:
    """Reduced row echelon form R = T @ a with T invertible.

    Deterministic (leftmost pivot column, topmost row), so canonical bases
    derived from it are reproducible.
    """
    r, rank, pivots, t = rref_array(a.data, a.field.p)
    return RrefResult(Matrix(a.field, r), rank, pivots, Matrix(a.field, t))


def rank(a: Matrix) -> int:
    return rref_array(a.data, a.field.p)[1]


def kernel(a: Matrix) -> VectorSubspace:
    """{x : a x = 0}, canonical basis, dim = cols - rank."""
    return VectorSubspace(a.field, a.cols, kernel_array(a.data, a.field.p))


def left_kernel(a: Matrix) -> VectorSubspace:
    """{u : u^T a = 0}, canonical basis, dim = rows - rank."""
    return VectorSubspace(a.field, a.rows, kernel_array(a.data.T, a.field.p))


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise NotSquareError(f"cannot invert a {a.shape} matrix")
    r, rk, _, t = rref_array(a.data, a.field.p)
    if rk < a.rows:
        raise SingularMatrixError(f"matrix has rank {rk} < {a.rows}")
    return Matrix(a.field, t)


def det(a: Matrix) -> int:
    if not a.is_square():
        raise NotSquareError(f"determinant needs a square matrix, got {a.shape}")
    return int(batch_det(a.data[None, :, :], a.field.p)[0])


def eigenvalues_in_field(n: Matrix) -> set[int]:
    """All lam in GF(p) with det(n - lam I) = 0, by exhaustive evaluation.

    Exhaustion over the p field elements is exact in every characteristic
    and avoids polynomial arithmetic; cost p * O(size^3).
    """
    if not n.is_square():
        raise NotSquareError("eigenvalues need a square matrix")
    p = n.field.p
    size = n.rows
    if size == 0:
        return set()
    lams = np.arange(p, dtype=np.int64)
    shifted = (n.data[None, :, :] - lams[:, None, None] * np.eye(size, dtype=np.int64)) % p
    dets = batch_det(shifted, p)
    return {int(l) for l in lams[dets == 0]}


def is_nilpotent(n: Matrix) -> bool:
    """True iff n**size = 0 (size = side length), via repeated squaring."""
    if not n.is_square():
        raise NotSquareError("nilpotency needs a square matrix")
    p = n.field.p
    size = n.rows
    if size == 0:
        return True
    m = n.data
    k = 1
    while k < size:
        m = (m @ m) % p
        k *= 2
    return not m.any()


# ---------------------------------------------------------------------------
# batched kernels (vectorized over a leading axis)
# ---------------------------------------------------------------------------

def coefficient_digits(indices: np.ndarray, p: int, d: int) -> np.ndarray:
    """Base-p digits of each index, most significant first, shape (k, d).

    Digit order is the enumeration contract: index k encodes the coefficient
    tuple (c_0, ..., c_{d-1}) with c_0 most significant, so increasing index
    is lexicographic order on coefficient tuples.
    """
    indices = np.asarray(indices, dtype=np.int64)
    if d == 0:
        return np.zeros((indices.size, 0), dtype=np.int64)
    powers = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return (indices[:, None] // powers[None, :]) % p


def projective_index_ranges(p: int, d: int) -> list[tuple[int, int]]:
    """Index ranges [a, b) covering exactly the leading-coefficient-1 tuples.

    Their union enumerates one representative per projective class of
    non-zero coefficient vectors, in increasing index order.
    """
    return [(p**j, 2 * p**j) for j in range(d)]


def batch_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.matmul(a, b) % p


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks over GF(p) of a stack of matrices, shape (k, m, n) -> (k,)."""
    a = np.array(mats, dtype=np.int64) % p
    k, m, n = a.shape
    if k == 0 or m == 0 or n == 0:
        return np.zeros(k, dtype=np.int64)
    inv = inverse_table(p)
    row = np.zeros(k, dtype=np.int64)
    rows_idx = np.arange(m)
    ar = np.arange(k)
    for col in range(n):
        usable = (a[:, :, col] != 0) & (rows_idx[None, :] >= row[:, None])
        has = usable.any(axis=1)
        if not has.any():
            continue
        idx = ar[has]
        piv = np.argmax(usable[idx], axis=1)
        cur = row[idx]
        # swap pivot row up
        tmp = a[idx, cur, :].copy()
        a[idx, cur, :] = a[idx, piv, :]
        a[idx, piv, :] = tmp
        # normalize pivot row
        f = inv[a[idx, cur, col]]
        a[idx, cur, :] = (a[idx, cur, :] * f[:, None]) % p
        # eliminate every other row with a non-zero entry in this column
        colvals = a[idx, :, col].copy()
        colvals[np.arange(idx.size), cur] = 0
        a[idx] = (a[idx] - colvals[:, :, None] * a[idx, cur, :][:, None, :]) % p
        row[idx] += 1
        if (row == min(m, n)).all():
            break
    return row


def _det2(a: np.ndarray, p: int) -> np.ndarray:
    return (a[:, 0, 0] * a[:, 1, 1] - a[:, 0, 1] * a[:, 1, 0]) % p


def _det3(a: np.ndarray, p: int) -> np.ndarray:
    m00 = (a[:, 1, 1] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 1]) % p
    m01 = (a[:, 1, 0] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 0]) % p
    m02 = (a[:, 1, 0] * a[:, 2, 1] - a[:, 1, 1] * a[:, 2, 0]) % p
    return (a[:, 0, 0] * m00 - a[:, 0, 1] * m01 + a[:, 0, 2] * m02) % p


def _det4(a: np.ndarray, p: int) -> np.ndarray:
    total = np.zeros(a.shape[0], dtype=np.int64)
    sign = 1
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        minor = _det3(a[:, 1:, :][:, :, cols], p)
        total = (total + sign * a[:, 0, j] * minor) % p
        sign = -sign
    return total % p


def batch_det(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants over GF(p) of a stack of square matrices."""
    a = np.asarray(mats, dtype=np.int64) % p
    k, m, n = a.shape
    if m != n:
        raise NotSquareError("batch_det needs square matrices")
    if k == 0:
        return np.zeros(0, dtype=np.int64)
    if n == 0:
        return np.ones(k, dtype=np.int64)
    if n == 1:
        return a[:, 0, 0] % p
    if n == 2:
        return _det2(a, p)
    if n == 3:
        return _det3(a, p)
    if n == 4:
        return _det4(a, p)
    return _batch_det_eliminate(a.copy(), p)


def _batch_det_eliminate(a: np.ndarray, p: int) -> np.ndarray:
    """Fallback determinant by elimination, vectorized over the batch."""
    k, n, _ = a.shape
    inv = inverse_table(p)
    dets = np.ones(k, dtype=np.int64)
    alive = np.ones(k, dtype=bool)
    ar = np.arange(k)
    for col in range(n):
        sub = a[:, col:, col]
        has = (sub != 0).any(axis=1) & alive
        alive &= has
        dets[~alive] = 0
        if not alive.any():
            break
        idx = ar[alive]
        piv = col + np.argmax(a[idx, col:, col] != 0, axis=1)
        swap = piv != col
        sidx = idx[swap]
        if sidx.size:
            spiv = piv[swap]
            tmp = a[sidx, col, :].copy()
            a[sidx, col, :] = a[sidx, spiv, :]
            a[sidx, spiv, :] = tmp
            dets[sidx] = (-dets[sidx]) % p
        pv = a[idx, col, col]
        dets[idx] = (dets[idx] * pv) % p
        f = inv[pv]
        below = a[idx, col + 1 :, col]
        if below.shape[1]:
            factors = (below * f[:, None]) % p
            a[idx, col + 1 :, :] = (
                a[idx, col + 1 :, :] - factors[:, :, None] * a[idx, col, :][:, None, :]
            ) % p
    return dets % p


def batch_power_is_zero(mats: np.ndarray, exponent_at_least: int, p: int) -> np.ndarray:
    """For each square matrix N, whether N**k = 0 for k = 2**ceil(log2 e).

    Since a nilpotent n x n matrix satisfies N**n = 0, calling this with
    exponent_at_least = n decides nilpotency.
    """
    a = np.asarray(mats, dtype=np.int64) % p
    k = 1
    m = a
    while k < exponent_at_least:
        m = np.matmul(m, m) % p
        k *= 2
    return ~m.any(axis=(1, 2))
