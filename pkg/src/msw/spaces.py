"""Linear subspaces of Mat_{m,n}(GF(p)): canonical bases, enumeration,
upper rank, rank profiles, equivalence transforms, and Grassmannian streams.

A space is stored as the reduced row echelon basis of its row-major
vectorizations, so equality of spaces is an array comparison and
canonicalization is idempotent.

Enumeration orders are part of the external contract:

* elements of a space are indexed by 0 <= k < p**dim; the base-p digits of
  k, most significant first, are the coefficients on the canonical basis
  (coefficient-lexicographic order);
* d-dimensional subspaces of GF(p)^n are streamed by pivot pattern, pivot
  column sets in lexicographic order, and within a pattern by base-p digits
  over the free positions in row-major order, most significant first.

Both streams are re-creatable from (parameters, start index), so scans can
be partitioned by index range with results independent of the partition.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import (
    EnumerationTooLargeError,
    NotSquareError,
    ShapeMismatchError,
    SingularMatrixError,
)
from .linalg import (
    FieldSpec,
    Matrix,
    VectorSubspace,
    batch_rank,
    coefficient_digits,
    projective_index_ranges,
    rref_array,
    row_space_array,
    in_row_space,
    _freeze,
)

DEFAULT_ELEMENT_CAP = 1 << 22
_BLOCK = 1 << 12


def _as_vector_rows(arr, width: int) -> np.ndarray:
    """View an array as a stack of row vectors of the given width.

    Keeps the leading axis explicit so zero-width ambients reshape cleanly.
    """
    arr = np.asarray(arr, dtype=np.int64)
    if arr.ndim <= 1:
        count = 1 if arr.size else 0
        return arr.reshape(count, width)
    return arr.reshape(arr.shape[0], width)


class MatrixSpace:
    """A linear subspace of Mat_{m,n}(GF(p)) in canonical form."""

    __slots__ = ("field", "rows", "cols", "_basis")

    def __init__(self, field: FieldSpec, rows: int, cols: int, canonical_basis: np.ndarray):
        self.field = field
        self.rows = int(rows)
        self.cols = int(cols)
        self._basis = _freeze(_as_vector_rows(canonical_basis, self.rows * self.cols))

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_vectorized(cls, field: FieldSpec, rows: int, cols: int, vecs: np.ndarray) -> "MatrixSpace":
        vecs = _as_vector_rows(vecs, rows * cols) % field.p
        return cls(field, rows, cols, row_space_array(vecs, field.p))

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> "MatrixSpace":
        return cls(field, rows, cols, np.zeros((0, rows * cols), dtype=np.int64))

    @classmethod
    def full(cls, field: FieldSpec, rows: int, cols: int) -> "MatrixSpace":
        return cls(field, rows, cols, np.eye(rows * cols, dtype=np.int64))

    # -- basic data --------------------------------------------------------
    @property
    def dim(self) -> int:
        return self._basis.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def basis(self) -> np.ndarray:
        """Canonical basis as vectorized rows, shape (dim, rows*cols)."""
        return self._basis

    def basis_arrays(self) -> np.ndarray:
        """Canonical basis as a (dim, rows, cols) array."""
        return self._basis.reshape(self.dim, self.rows, self.cols)

    def basis_matrices(self) -> tuple[Matrix, ...]:
        return tuple(Matrix(self.field, b) for b in self.basis_arrays())

    @property
    def element_count(self) -> int:
        return self.field.p**self.dim

    def contains(self, mat: Matrix) -> bool:
        if mat.field != self.field or mat.shape != self.shape:
            return False
        return in_row_space(self._basis, mat.vec(), self.field.p)

    def contains_space(self, other: "MatrixSpace") -> bool:
        if other.field != self.field or other.shape != self.shape:
            return False
        return all(in_row_space(self._basis, v, self.field.p) for v in other._basis)

    # -- element enumeration -----------------------------------------------
    def element_block(self, start: int, stop: int) -> np.ndarray:
        """Elements with indices [start, stop) as a (stop-start, m, n) array."""
        idx = np.arange(start, stop, dtype=np.int64)
        coeffs = coefficient_digits(idx, self.field.p, self.dim)
        if self.dim == 0:
            flat = np.zeros((idx.size, self.rows * self.cols), dtype=np.int64)
        else:
            flat = (coeffs @ self._basis) % self.field.p
        return flat.reshape(idx.size, self.rows, self.cols)

    def element_at(self, index: int) -> Matrix:
        return Matrix(self.field, self.element_block(index, index + 1)[0])

    # -- identity ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixSpace):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self._basis.shape == other._basis.shape
            and np.array_equal(self._basis, other._basis)
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.shape, self._basis.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixSpace({self.field}, {self.rows}x{self.cols}, dim {self.dim})"


@dataclass(frozen=True)
class RankProfile:
    """How many elements of a space have each rank.

    counts[r] is the number of elements of rank r; the counts sum to p**dim
    and are invariant under equivalence transforms.
    """

    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict[int, int]:
        return {r: c for r, c in enumerate(self.counts) if c}

    def __str__(self) -> str:
        return str(self.as_dict())


# ---------------------------------------------------------------------------
# span and transforms
# ---------------------------------------------------------------------------

def span(mats: Sequence[Matrix]) -> MatrixSpace:
    """Canonical space spanned by the given matrices (all same field/shape)."""
    if not mats:
        raise ShapeMismatchError("span needs at least one matrix; use MatrixSpace.zero")
    field = mats[0].field
    shape = mats[0].shape
    for m in mats:
        if m.field != field or m.shape != shape:
            raise ShapeMismatchError("span inputs must share field and shape")
    vecs = np.stack([m.vec() for m in mats])
    space = MatrixSpace.from_vectorized(field, shape[0], shape[1], vecs)
    assert all(space.contains(m) for m in mats)
    return space


def elements(space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP) -> Iterator[Matrix]:
    """Stream every element exactly once, in coefficient-lexicographic order."""
    total = space.element_count
    if total > cap:
        raise EnumerationTooLargeError(total, cap)
    for start in range(0, total, _BLOCK):
        block = space.element_block(start, min(start + _BLOCK, total))
        for mat in block:
            yield Matrix(space.field, mat)


def _projective_blocks(space: MatrixSpace) -> Iterator[tuple[int, np.ndarray]]:
    """Blocks of projective representatives as (start_index, elements)."""
    for a, b in projective_index_ranges(space.field.p, space.dim):
        for start in range(a, b, _BLOCK):
            stop = min(start + _BLOCK, b)
            yield start, space.element_block(start, stop)


def upper_rank(space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[int, Matrix]:
    """Largest rank attained in the space, with the first witness attaining it.

    Rank is invariant under scaling, so only projective representatives are
    visited; the witness is the first element (in enumeration order) whose
    rank equals the maximum.
    """
    if space.element_count > cap:
        raise EnumerationTooLargeError(space.element_count, cap)
    best = 0
    witness = Matrix.zeros(space.field, space.rows, space.cols)
    ceiling = min(space.rows, space.cols)
    for start, block in _projective_blocks(space):
        ranks = batch_rank(block, space.field.p)
        top = int(ranks.max()) if ranks.size else 0
        if top > best:
            best = top
            witness = Matrix(space.field, block[int(np.argmax(ranks == top))])
            if best == ceiling:
                break
    return best, witness


def rank_profile(space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP) -> RankProfile:
    """Counts of elements of each rank (all p**dim elements accounted for)."""
    if space.element_count > cap:
        raise EnumerationTooLargeError(space.element_count, cap)
    counts = [0] * (min(space.rows, space.cols) + 1)
    counts[0] = 1  # the zero matrix
    for _, block in _projective_blocks(space):
        ranks = batch_rank(block, space.field.p)
        for r in ranks:
            counts[int(r)] += space.field.p - 1  # each class has p-1 scalings
    return RankProfile(tuple(counts))


def _require_invertible(mat: Matrix, side: int) -> None:
    if not mat.is_square() or mat.rows != side:
        raise ShapeMismatchError(f"transform must be {side}x{side}, got {mat.shape}")
    if rref_array(mat.data, mat.field.p)[1] < side:
        raise SingularMatrixError("transform matrix is singular")


def transform_equivalent(space: MatrixSpace, row_change: Matrix, col_change: Matrix) -> MatrixSpace:
    """The equivalent space {P B Q : B in space} for invertible P, Q."""
    _require_invertible(row_change, space.rows)
    _require_invertible(col_change, space.cols)
    p = space.field.p
    moved = np.matmul(
        np.matmul(row_change.data[None, :, :], space.basis_arrays()) % p,
        col_change.data[None, :, :],
    ) % p
    return MatrixSpace.from_vectorized(space.field, space.rows, space.cols, moved)


def transform_similar(space: MatrixSpace, basis_change: Matrix) -> MatrixSpace:
    """The similar space {P B P^-1 : B in space} for invertible P."""
    if space.rows != space.cols:
        raise NotSquareError("similarity needs a square matrix space")
    from .linalg import inverse  # local import keeps module load light

    return transform_equivalent(space, basis_change, inverse(basis_change))


def restrict_columns(space: MatrixSpace, window: VectorSubspace) -> MatrixSpace:
    """Restriction of the operators to a column-side subspace.

    With Q the n x d matrix of the subspace's canonical basis, returns
    span{B Q} inside Mat_{m,d}.  The upper rank of the result does not
    depend on the basis chosen for the subspace.
    """
    if window.field != space.field or window.ambient != space.cols:
        raise ShapeMismatchError("column subspace does not match the space")
    q = window.basis.T  # n x d
    moved = np.matmul(space.basis_arrays(), q[None, :, :]) % space.field.p
    return MatrixSpace.from_vectorized(space.field, space.rows, window.dim, moved)


def compress_rows(space: MatrixSpace, functionals: VectorSubspace) -> MatrixSpace:
    """Post-composition with the projection whose rows span `functionals`.

    With P the c x m matrix of the canonical basis, returns span{P B}
    inside Mat_{c,n}.
    """
    if functionals.field != space.field or functionals.ambient != space.rows:
        raise ShapeMismatchError("row-functional subspace does not match the space")
    proj = functionals.basis  # c x m
    moved = np.matmul(proj[None, :, :], space.basis_arrays()) % space.field.p
    return MatrixSpace.from_vectorized(space.field, functionals.dim, space.cols, moved)


# ---------------------------------------------------------------------------
# Grassmannian enumeration by pivot pattern
# ---------------------------------------------------------------------------

def gaussian_binomial(n: int, d: int, p: int) -> int:
    """Number of d-dimensional subspaces of GF(p)^n (exact integer)."""
    if d < 0 or d > n:
        return 0
    num = 1
    den = 1
    for i in range(d):
        num *= p ** (n - i) - 1
        den *= p ** (d - i) - 1
    return num // den


def _free_positions(pivots: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Free entry positions of the RREF pattern, in row-major order."""
    pivot_set = set(pivots)
    return [
        (i, j)
        for i in range(len(pivots))
        for j in range(n)
        if j not in pivot_set and j > pivots[i]
    ]


def _pattern_counts(n: int, d: int, p: int) -> list[tuple[tuple[int, ...], int]]:
    """(pivot columns, number of subspaces) per pattern, in lex order."""
    out = []
    for pivots in itertools.combinations(range(n), d):
        out.append((pivots, p ** len(_free_positions(pivots, n))))
    return out


def _pattern_block(
    pivots: Sequence[int], n: int, p: int, start: int, stop: int
) -> np.ndarray:
    """Bases with free-assignment indices [start, stop), shape (k, d, n)."""
    d = len(pivots)
    free = _free_positions(pivots, n)
    count = stop - start
    bases = np.zeros((count, d, n), dtype=np.int64)
    for i, c in enumerate(pivots):
        bases[:, i, c] = 1
    if free:
        digits = coefficient_digits(np.arange(start, stop, dtype=np.int64), p, len(free))
        for k, (i, j) in enumerate(free):
            bases[:, i, j] = digits[:, k]
    return bases


def subspace_basis_blocks(
    n: int,
    d: int,
    field: FieldSpec,
    start: int = 0,
    stop: Optional[int] = None,
    block: int = _BLOCK,
) -> Iterator[tuple[int, np.ndarray]]:
    """Stream canonical bases of d-subspaces of GF(p)^n in blocks.

    Yields (first_global_index, bases) with bases of shape (k, d, n).  The
    global order is the enumeration contract described in the module
    docstring; [start, stop) selects a slice of it.
    """
    p = field.p
    total = gaussian_binomial(n, d, p)
    if stop is None:
        stop = total
    start = max(0, start)
    stop = min(stop, total)
    offset = 0
    for pivots, count in _pattern_counts(n, d, p):
        lo = max(start, offset)
        hi = min(stop, offset + count)
        pos = lo
        while pos < hi:
            end = min(pos + block, hi)
            yield pos, _pattern_block(pivots, n, p, pos - offset, end - offset)
            pos = end
        offset += count
        if offset >= stop:
            break


def subspaces_of_vector_space(
    n: int, d: int, field: FieldSpec, start: int = 0
) -> Iterator[VectorSubspace]:
    """Every d-dimensional subspace of GF(p)^n exactly once.

    Total count equals the Gaussian binomial; bases come out already
    canonical (they are RREF by construction).
    """
    if d < 0 or d > n:
        raise ShapeMismatchError(f"subspace dimension {d} out of range for ambient {n}")
    for _, block in subspace_basis_blocks(n, d, field, start=start):
        for basis in block:
            yield VectorSubspace(field, n, basis)


def matrix_subspaces(
    m: int, n: int, d: int, field: FieldSpec, start: int = 0
) -> Iterator[MatrixSpace]:
    """Every d-dimensional subspace of Mat_{m,n}(GF(p)), via vectorization."""
    ambient = m * n
    if d < 0 or d > ambient:
        raise ShapeMismatchError(f"dimension {d} out of range for ambient {ambient}")
    for _, block in subspace_basis_blocks(ambient, d, field, start=start):
        for basis in block:
            yield MatrixSpace(field, m, n, basis)


def _combination_rank(combo: Sequence[int], n: int) -> int:
    """Rank of a sorted combination in lexicographic order."""
    rank_ = 0
    prev = -1
    k = len(combo)
    for i, c in enumerate(combo):
        for j in range(prev + 1, c):
            rank_ += math.comb(n - 1 - j, k - 1 - i)
        prev = c
    return rank_


def subspace_index(subspace: VectorSubspace) -> int:
    """Position of a subspace in the enumeration order of its Grassmannian."""
    n = subspace.ambient
    p = subspace.field.p
    d = subspace.dim
    basis = subspace.basis
    pivots = tuple(int(np.argmax(basis[i] != 0)) for i in range(d))
    offset = 0
    for combo in itertools.combinations(range(n), d):
        if combo == pivots:
            break
        offset += p ** len(_free_positions(combo, n))
    free = _free_positions(pivots, n)
    local = 0
    for (i, j) in free:
        local = local * p + int(basis[i, j])
    return offset + local


def matrix_subspace_index(space: MatrixSpace) -> int:
    """Position of a matrix space in the enumeration of its Grassmannian."""
    return subspace_index(
        VectorSubspace(space.field, space.rows * space.cols, space.basis)
    )
