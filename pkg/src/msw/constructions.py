"""Named matrix spaces and seeded random generators.

The alternating basis (e_i e_j^T - e_j e_i^T for i < j) and the wedge
coordinates both use lexicographic order on the index pairs (i, j); this
order is fixed once here and is part of the file-format contract.

"Alternating" always means skew-symmetric with zero diagonal; in
characteristic 2 the zero diagonal is the binding part of the condition,
and the basis above spans exactly that set in every characteristic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import NotABasisError, ShapeMismatchError, SingularMatrixError
from .linalg import (
    FieldSpec,
    Matrix,
    coefficient_digits,
    projective_index_ranges,
    rref_array,
)
from .spaces import MatrixSpace, span

RngLike = Union[int, np.random.Generator]


def _rng(seed: RngLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def pair_order(n: int) -> list[tuple[int, int]]:
    """The fixed lexicographic order on index pairs i < j."""
    return list(itertools.combinations(range(n), 2))


def alternating_basis_arrays(n: int, p: int) -> np.ndarray:
    """Canonical alternating basis, shape (n(n-1)/2, n, n)."""
    pairs = pair_order(n)
    out = np.zeros((len(pairs), n, n), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        out[k, i, j] = 1
        out[k, j, i] = (-1) % p
    return out


def alternating_space(n: int, field: FieldSpec) -> MatrixSpace:
    """All n x n alternating matrices (skew with zero diagonal)."""
    if n < 1:
        raise ShapeMismatchError("alternating space needs n >= 1")
    basis = alternating_basis_arrays(n, field.p)
    return MatrixSpace.from_vectorized(field, n, n, basis.reshape(len(basis), n * n))


def strict_upper_triangular_space(n: int, field: FieldSpec) -> MatrixSpace:
    """All strictly upper-triangular n x n matrices."""
    if n < 1:
        raise ShapeMismatchError("strict upper-triangular space needs n >= 1")
    pairs = pair_order(n)
    basis = np.zeros((len(pairs), n, n), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        basis[k, i, j] = 1
    return MatrixSpace.from_vectorized(field, n, n, basis.reshape(len(basis), n * n))


def _stacked_pairing_space(
    alt_arrays: np.ndarray, right: np.ndarray, field: FieldSpec, n: int
) -> MatrixSpace:
    """span over x of the stacked rows (x^T B_k right), one row per B_k."""
    p = field.p
    moved = np.matmul(alt_arrays, right[None, :, :]) % p  # B_k right
    # generator for x = e_j is the matrix whose row k is row j of B_k right
    generators = np.transpose(moved, (1, 0, 2))  # (n, #pairs, n)
    return MatrixSpace.from_vectorized(
        field, alt_arrays.shape[0], n, generators.reshape(n, -1)
    )


def wedge_space(n: int, field: FieldSpec) -> MatrixSpace:
    """Matrices of the operators x ^ - in lexicographic wedge coordinates.

    A subspace of Mat_{n(n-1)/2, n} of dimension n and upper rank n - 1;
    the extremal shape for the row-count bound on semi-primitive spaces.
    """
    if n < 2:
        raise ShapeMismatchError("wedge space needs n >= 2")
    alt = alternating_basis_arrays(n, field.p)
    return _stacked_pairing_space(alt, np.eye(n, dtype=np.int64), field, n)


def transformed_wedge_space(
    n: int, field: FieldSpec, alt_basis: Sequence[Matrix], right: Matrix
) -> MatrixSpace:
    """The wedge construction over an arbitrary alternating basis and frame.

    Equivalent to wedge_space(n); the basis must span the alternating
    matrices and the frame must be invertible.
    """
    if n < 2:
        raise ShapeMismatchError("wedge space needs n >= 2")
    want = n * (n - 1) // 2
    if len(alt_basis) != want:
        raise NotABasisError(f"need exactly {want} alternating matrices, got {len(alt_basis)}")
    alt = alternating_space(n, field)
    cand = span(list(alt_basis))
    if cand != alt:
        raise NotABasisError("matrices do not form a basis of the alternating space")
    if right.shape != (n, n) or rref_array(right.data, field.p)[1] < n:
        raise SingularMatrixError("frame matrix must be invertible n x n")
    arrays = np.stack([b.data for b in alt_basis])
    return _stacked_pairing_space(arrays, right.data, field, n)


def scaled_alternating_space(scale: Matrix) -> MatrixSpace:
    """The space {P A : A alternating} for an invertible P."""
    field = scale.field
    n = scale.rows
    if not scale.is_square():
        raise ShapeMismatchError("scaling matrix must be square")
    if rref_array(scale.data, field.p)[1] < n:
        raise SingularMatrixError("scaling matrix is singular")
    alt = alternating_basis_arrays(n, field.p)
    moved = np.matmul(scale.data[None, :, :], alt) % field.p
    return MatrixSpace.from_vectorized(field, n, n, moved.reshape(len(alt), n * n))


@dataclass(frozen=True)
class QuadraticFormSpec:
    """The quadratic form x -> x^T P x for an invertible matrix P."""

    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if not m.is_square():
            raise ShapeMismatchError("quadratic form needs a square matrix")
        if rref_array(m.data, m.field.p)[1] < m.rows:
            raise SingularMatrixError("quadratic form matrix must be invertible")

    def value(self, x: np.ndarray) -> int:
        p = self.matrix.field.p
        x = np.asarray(x, dtype=np.int64) % p
        return int(x @ self.matrix.data @ x % p)


def is_isotropic(form: QuadraticFormSpec) -> tuple[bool, Optional[np.ndarray]]:
    """Whether some non-zero vector has form value zero.

    Values scale by squares, so projective representatives are enough; the
    witness is the first zero-valued non-zero vector in enumeration order.
    """
    p = form.matrix.field.p
    n = form.matrix.rows
    mat = form.matrix.data
    for a, b in projective_index_ranges(p, n):
        vecs = coefficient_digits(np.arange(a, b, dtype=np.int64), p, n)
        vals = np.einsum("ki,ij,kj->k", vecs, mat, vecs) % p
        if (vals == 0).any():
            return True, vecs[int(np.argmax(vals == 0))].copy()
    return False, None


# ---------------------------------------------------------------------------
# seeded random objects
# ---------------------------------------------------------------------------

def random_matrix(field: FieldSpec, m: int, n: int, seed: RngLike) -> Matrix:
    rng = _rng(seed)
    return Matrix(field, rng.integers(0, field.p, size=(m, n)))


def random_invertible(field: FieldSpec, n: int, seed: RngLike) -> Matrix:
    """Uniform-ish invertible matrix by rejection sampling."""
    rng = _rng(seed)
    while True:
        cand = rng.integers(0, field.p, size=(n, n))
        if rref_array(cand, field.p)[1] == n:
            return Matrix(field, cand)


def random_space(field: FieldSpec, m: int, n: int, dim: int, seed: RngLike) -> MatrixSpace:
    """Random subspace of Mat_{m,n} of exactly the requested dimension."""
    if dim < 0 or dim > m * n:
        raise ShapeMismatchError(f"dimension {dim} out of range for {m}x{n}")
    if dim == 0:
        return MatrixSpace.zero(field, m, n)
    rng = _rng(seed)
    while True:
        vecs = rng.integers(0, field.p, size=(dim, m * n))
        if rref_array(vecs, field.p)[1] == dim:
            return MatrixSpace.from_vectorized(field, m, n, vecs)


def random_alt_basis(field: FieldSpec, n: int, seed: RngLike) -> list[Matrix]:
    """A random basis of the alternating matrices."""
    rng = _rng(seed)
    k = n * (n - 1) // 2
    mix = random_invertible(field, k, rng)
    alt = alternating_basis_arrays(n, field.p)
    combined = np.tensordot(mix.data, alt, axes=(1, 0)) % field.p
    return [Matrix(field, combined[i]) for i in range(k)]
