"""Duality between square matrix spaces and spaces of pairing matrices,
block decompositions, shear conjugations and invariant-subspace splits.

Given a square space V with canonical basis (B_1, ..., B_m) and an
invertible frame P (columns = chosen basis of the column space), the
pairing matrix of a vector x is the m x n matrix whose row i is
x^T B_i^T P, i.e. row i evaluates the bilinear form (N, y) -> y^T N x at
N = B_i against the frame columns.  The map x -> pairing(x) is linear; its
image is a matrix space whose upper rank is max_x dim(V x), which is the
bridge from spectral properties of V to bounded-rank spaces.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    BadSplitError,
    NotInvariantError,
    NotMemberError,
    NotSquareError,
    PreconditionViolatedError,
    ShapeMismatchError,
    SingularMatrixError,
)
from .linalg import (
    Matrix,
    VectorSubspace,
    complete_to_invertible,
    inverse,
    kernel_array,
    rref_array,
)
from .spaces import MatrixSpace, transform_similar


@dataclass(frozen=True)
class DualSpace:
    """The space of pairing matrices of a square matrix space.

    ``generator_images[j]`` is the pairing matrix of the j-th standard
    basis vector; ``space`` is their span.  dim(space) equals n minus the
    dimension of the common kernel of the source, and the rank of
    pairing(x) equals dim(source x) for every x.
    """

    source: MatrixSpace
    frame: Matrix
    generator_images: np.ndarray  # (n, m, n), read-only
    space: MatrixSpace

    def pairing_matrix(self, x: np.ndarray) -> Matrix:
        p = self.source.field.p
        x = np.asarray(x, dtype=np.int64) % p
        return Matrix(self.source.field, np.tensordot(x, self.generator_images, axes=(0, 0)) % p)

    def to_json_dict(self) -> dict:
        return {
            "source_dim": self.source.dim,
            "frame": self.frame.to_lists(),
            "space_shape": list(self.space.shape),
            "space_dim": self.space.dim,
            "space_basis": [m.to_lists() for m in self.space.basis_matrices()],
        }


def dual_space(source: MatrixSpace, frame: Optional[Matrix] = None) -> DualSpace:
    """Build the pairing-matrix space of a square space of dimension >= 1.

    The identity frame is the default; reruns record the frame so results
    are reproducible.  The resulting space always satisfies condition (ii),
    and satisfies condition (i) exactly when the source has no common left
    kernel (in particular whenever the source is irreducible).
    """
    if source.rows != source.cols:
        raise NotSquareError("dual construction needs a square space")
    n = source.cols
    m = source.dim
    if m < 1:
        raise PreconditionViolatedError("dual construction needs a space of dimension >= 1")
    field = source.field
    p = field.p
    if frame is None:
        frame = Matrix.identity(field, n)
    if frame.shape != (n, n):
        raise ShapeMismatchError(f"frame must be {n}x{n}")
    if rref_array(frame.data, p)[1] < n:
        raise SingularMatrixError("frame must be invertible")
    basis = source.basis_arrays()  # (m, n, n)
    # pairing(e_j) row i = (B_i^T P)[j, :]
    lifted = np.matmul(np.swapaxes(basis, 1, 2), frame.data[None, :, :]) % p  # (m, n, n)
    generators = np.ascontiguousarray(np.transpose(lifted, (1, 0, 2)))  # (n, m, n)
    generators.setflags(write=False)
    space = MatrixSpace.from_vectorized(field, m, n, generators.reshape(n, -1))
    # dim identity: the pairing map kills exactly the common kernel
    common = kernel_array(basis.reshape(-1, n), p)
    assert space.dim == n - common.shape[0]
    return DualSpace(source=source, frame=frame, generator_images=generators, space=space)


@dataclass(frozen=True)
class BlockDecomposition:
    """2x2 block view of a square space at a split index d.

    Every element N splits into top_left (d x d), top_right (d x (n-d)),
    bottom_left ((n-d) x d) and bottom_right ((n-d) x (n-d)); the block
    spaces are the spans of the respective blocks of all elements.
    """

    source: MatrixSpace
    split: int
    top_left_space: MatrixSpace
    top_right_space: MatrixSpace
    bottom_left_space: MatrixSpace
    bottom_right_space: MatrixSpace

    def blocks_of(self, mat: Matrix) -> tuple[Matrix, Matrix, Matrix, Matrix]:
        d = self.split
        f = self.source.field
        a = mat.data
        return (
            Matrix(f, a[:d, :d]),
            Matrix(f, a[:d, d:]),
            Matrix(f, a[d:, :d]),
            Matrix(f, a[d:, d:]),
        )


def _check_split(space: MatrixSpace, d: int) -> None:
    if space.rows != space.cols:
        raise NotSquareError("block split needs a square space")
    if not (1 <= d <= space.rows - 1):
        raise BadSplitError(f"split index {d} out of range for size {space.rows}")


def decompose(space: MatrixSpace, d: int) -> BlockDecomposition:
    """Exact block extraction of a square space at split index d."""
    _check_split(space, d)
    field = space.field
    basis = space.basis_arrays()
    n = space.rows

    def blockspace(rows, cols, sl_r, sl_c):
        sub = basis[:, sl_r, sl_c].reshape(space.dim, rows * cols)
        return MatrixSpace.from_vectorized(field, rows, cols, sub)

    return BlockDecomposition(
        source=space,
        split=d,
        top_left_space=blockspace(d, d, slice(0, d), slice(0, d)),
        top_right_space=blockspace(d, n - d, slice(0, d), slice(d, n)),
        bottom_left_space=blockspace(n - d, d, slice(d, n), slice(0, d)),
        bottom_right_space=blockspace(n - d, n - d, slice(d, n), slice(d, n)),
    )


def kernel_of_first_rows(space: MatrixSpace, d: int) -> MatrixSpace:
    """The subspace {N in space : first d rows of N are zero}."""
    _check_split(space, d)
    p = space.field.p
    n = space.cols
    if space.dim == 0:
        return space
    head = space.basis[:, : d * n]  # coordinates of the first d rows
    coeffs = kernel_array(head.T, p)  # combinations killing those rows
    if coeffs.shape[0] == 0:
        return MatrixSpace.zero(space.field, n, n)
    vecs = (coeffs @ space.basis) % p
    return MatrixSpace.from_vectorized(space.field, n, n, vecs)


@dataclass(frozen=True)
class ShearTransform:
    """The unipotent block matrix [[I, 0], [R, I]] for a split at d."""

    split: int
    shear_block: Matrix  # (n-d) x d

    def matrix(self, n: int) -> Matrix:
        d = self.split
        f = self.shear_block.field
        out = np.eye(n, dtype=np.int64)
        out[d:, :d] = self.shear_block.data
        return Matrix(f, out)

    def inverse_matrix(self, n: int) -> Matrix:
        d = self.split
        f = self.shear_block.field
        out = np.eye(n, dtype=np.int64)
        out[d:, :d] = (-self.shear_block.data) % f.p
        return Matrix(f, out)


def shear_conjugate(space: MatrixSpace, shear: ShearTransform) -> MatrixSpace:
    """Conjugation by the shear, computed blockwise.

    With blocks (A, C; B, D) at the split and R the shear block, each
    element maps to (A - CR, C; B + RA - RCR - DR, D + RC).  This equals
    plain conjugation by the shear matrix; the top-right block is
    unchanged.
    """
    d = shear.split
    _check_split(space, d)
    p = space.field.p
    n = space.rows
    r = shear.shear_block.data
    if r.shape != (n - d, d):
        raise BadSplitError(f"shear block must be {(n - d, d)}, got {r.shape}")
    basis = space.basis_arrays()
    a = basis[:, :d, :d]
    c = basis[:, :d, d:]
    b = basis[:, d:, :d]
    dd = basis[:, d:, d:]
    cr = np.matmul(c, r[None, :, :]) % p
    ra = np.matmul(r[None, :, :], a) % p
    rc = np.matmul(r[None, :, :], c) % p
    out = np.empty_like(basis)
    out[:, :d, :d] = (a - cr) % p
    out[:, :d, d:] = c
    out[:, d:, :d] = (b + ra - np.matmul(rc, r[None, :, :]) - np.matmul(dd, r[None, :, :])) % p
    out[:, d:, d:] = (dd + rc) % p
    return MatrixSpace.from_vectorized(space.field, n, n, out.reshape(space.dim, n * n))


def build_shear_witness(space: MatrixSpace, d: int, pivot: Matrix) -> Optional[ShearTransform]:
    """From an element whose top-right block is non-zero, build a shear R
    with R C x = x for the first vector x (enumeration order) with C x != 0.

    Returns None when the top-right block of the element vanishes.
    """
    _check_split(space, d)
    if not space.contains(pivot):
        raise NotMemberError("pivot element does not belong to the space")
    p = space.field.p
    n = space.rows
    c = pivot.data[:d, d:]  # d x (n-d)
    if not c.any():
        return None
    from .linalg import coefficient_digits, projective_index_ranges

    x = None
    for lo, hi in projective_index_ranges(p, n - d):
        vecs = coefficient_digits(np.arange(lo, hi, dtype=np.int64), p, n - d)
        vals = (vecs @ c.T) % p
        nz = vals.any(axis=1)
        if nz.any():
            x = vecs[int(np.argmax(nz))]
            break
    assert x is not None
    v = (c @ x) % p  # non-zero vector in GF(p)^d
    pos = int(np.argmax(v != 0))
    scale = pow(int(v[pos]), p - 2, p)
    r = np.outer(x, np.eye(d, dtype=np.int64)[pos]) * scale % p  # (n-d) x d
    assert np.array_equal((r @ v) % p, x % p)
    return ShearTransform(split=d, shear_block=Matrix(space.field, r))


def split_along_invariant(
    space: MatrixSpace, invariant: VectorSubspace
) -> tuple[MatrixSpace, MatrixSpace, MatrixSpace]:
    """Conjugate by a basis adapted to an invariant subspace and split.

    The subspace must be proper, non-zero and invariant under every basis
    element (checked).  Returns (conjugated space, leading diagonal block
    space, trailing diagonal block space); the lower-left block of every
    conjugated element is zero.
    """
    if space.rows != space.cols:
        raise NotSquareError("invariant split needs a square space")
    n = space.rows
    p = space.field.p
    k = invariant.dim
    if invariant.field != space.field or invariant.ambient != n:
        raise ShapeMismatchError("subspace does not live in the column space")
    if k == 0 or k == n:
        raise NotInvariantError("subspace must be proper and non-zero")
    for b in space.basis_arrays():
        for v in invariant.basis:
            if not invariant.contains((b @ v) % p):
                raise NotInvariantError("subspace is not invariant under the space")
    cols = complete_to_invertible(invariant.basis, n, p).T  # basis vectors as columns
    change = Matrix(space.field, cols)
    conj = transform_similar(space, inverse(change))
    assert not conj.basis_arrays()[:, k:, :k].any() if conj.dim else True
    blocks = decompose(conj, k)
    return conj, blocks.top_left_space, blocks.bottom_right_space
