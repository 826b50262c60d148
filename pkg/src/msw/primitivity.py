"""Non-degeneracy conditions on matrix spaces and the compression pipeline.

A space of m x n matrices is taken through four conditions:

  (i)   no non-zero vector is killed by every element (no common kernel);
  (ii)  no non-zero functional kills every element (no common left kernel);
  (iii) no restriction to a column hyperplane drops the upper rank;
  (iv)  no compression to a row-functional hyperplane drops the upper rank.

reduced = (i) and (ii); semi-primitive adds (iii); primitive adds (iv).

Conditions (iii) and (iv) are decided through an exact reformulation: for a
max-rank element B and a hyperplane H, the restriction of B to H keeps rank
urk exactly when ker B is not contained in H.  Hence some hyperplane drops
the upper rank iff one hyperplane contains every max-rank kernel, i.e. iff
the span of the max-rank kernels is a proper subspace.  The quantifier over
hyperplanes collapses to one pass over the elements.  The hyperplane-scan
form is kept (suffixed `_by_scan`) as an independent cross-check.

Edge conventions, flagged in report notes: condition (iii) is granted
vacuously when n = 1 and condition (iv) when m = 1 (compressing to zero
width or height always degenerates and is rejected as meaningless).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import EnumerationTooLargeError, PreconditionViolatedError
from .linalg import (
    Matrix,
    VectorSubspace,
    batch_rank,
    complete_to_invertible,
    kernel_array,
    row_space_array,
)
from .spaces import (
    DEFAULT_ELEMENT_CAP,
    MatrixSpace,
    _projective_blocks,
    restrict_columns,
    compress_rows,
    subspaces_of_vector_space,
    upper_rank,
)


def condition_i(space: MatrixSpace) -> tuple[bool, Optional[np.ndarray]]:
    """No common kernel vector.  Witness: a non-zero vector killed by all."""
    stacked = space.basis_arrays().reshape(space.dim * space.rows, space.cols)
    if stacked.shape[0] == 0:
        stacked = np.zeros((1, space.cols), dtype=np.int64)
    common = kernel_array(stacked, space.field.p)
    if common.shape[0] == 0:
        return True, None
    return False, common[0].copy()


def condition_ii(space: MatrixSpace) -> tuple[bool, Optional[np.ndarray]]:
    """No common left kernel vector.  Witness: a functional killing all."""
    stacked = np.swapaxes(space.basis_arrays(), 1, 2).reshape(
        space.dim * space.cols, space.rows
    )
    if stacked.shape[0] == 0:
        stacked = np.zeros((1, space.rows), dtype=np.int64)
    common = kernel_array(stacked, space.field.p)
    if common.shape[0] == 0:
        return True, None
    return False, common[0].copy()


def _max_rank_kernel_span(
    space: MatrixSpace, cap: int, side: str
) -> tuple[int, np.ndarray]:
    """(upper rank, span of kernels of all max-rank elements).

    side "right" collects kernels in GF(p)^n, side "left" collects left
    kernels in GF(p)^m.  One enumeration pass; the span accumulation stops
    early once it fills the ambient space.
    """
    if space.element_count > cap:
        raise EnumerationTooLargeError(space.element_count, cap)
    p = space.field.p
    ambient = space.cols if side == "right" else space.rows
    urk = upper_rank(space, cap)[0]
    if urk == 0:
        # only the zero matrix attains rank 0; its kernel is everything
        return 0, np.eye(ambient, dtype=np.int64)
    acc = np.zeros((0, ambient), dtype=np.int64)
    for _, block in _projective_blocks(space):
        ranks = batch_rank(block, p)
        top = block[ranks == urk]
        for mat in top:
            ker = kernel_array(mat if side == "right" else mat.T, p)
            acc = row_space_array(np.vstack([acc, ker]), p)
            if acc.shape[0] == ambient:
                return urk, acc
    return urk, acc


def _first_hyperplane_over(core: np.ndarray, ambient: int, p: int, field) -> VectorSubspace:
    """A deterministic hyperplane containing the given row span."""
    functional = kernel_array(core, p)[0]  # first annihilator basis vector
    return VectorSubspace(field, ambient, kernel_array(functional.reshape(1, -1), p))


def condition_iii(
    space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP
) -> tuple[bool, Optional[VectorSubspace]]:
    """Column-side condition: every hyperplane restriction keeps the upper rank.

    Witness on failure: a hyperplane whose restriction drops the rank.
    """
    if space.cols == 1:
        return True, None  # vacuous by convention, see module docstring
    urk, core = _max_rank_kernel_span(space, cap, "right")
    if core.shape[0] == space.cols:
        return True, None
    return False, _first_hyperplane_over(core, space.cols, space.field.p, space.field)


def condition_iv(
    space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP
) -> tuple[bool, Optional[VectorSubspace]]:
    """Row-side condition: every hyperplane compression keeps the upper rank."""
    if space.rows == 1:
        return True, None  # vacuous by convention, see module docstring
    urk, core = _max_rank_kernel_span(space, cap, "left")
    if core.shape[0] == space.rows:
        return True, None
    return False, _first_hyperplane_over(core, space.rows, space.field.p, space.field)


def condition_iii_by_scan(
    space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP
) -> tuple[bool, Optional[VectorSubspace]]:
    """Reference implementation of (iii), quantifying over hyperplanes."""
    if space.cols == 1:
        return True, None
    urk = upper_rank(space, cap)[0]
    for window in subspaces_of_vector_space(space.cols, space.cols - 1, space.field):
        if upper_rank(restrict_columns(space, window), cap)[0] < urk:
            return False, window
    return True, None


def condition_iv_by_scan(
    space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP
) -> tuple[bool, Optional[VectorSubspace]]:
    """Reference implementation of (iv), quantifying over row hyperplanes."""
    if space.rows == 1:
        return True, None
    urk = upper_rank(space, cap)[0]
    for functionals in subspaces_of_vector_space(space.rows, space.rows - 1, space.field):
        if upper_rank(compress_rows(space, functionals), cap)[0] < urk:
            return False, functionals
    return True, None


@dataclass(frozen=True)
class PrimitivityReport:
    """The four conditions, their witnesses and the derived classes."""

    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    cond_iv: bool
    urk: int
    witness_i: Optional[np.ndarray] = None
    witness_ii: Optional[np.ndarray] = None
    witness_iii: Optional[VectorSubspace] = None
    witness_iv: Optional[VectorSubspace] = None
    notes: tuple[str, ...] = ()

    @property
    def is_reduced(self) -> bool:
        return self.cond_i and self.cond_ii

    @property
    def is_semi_primitive(self) -> bool:
        return self.is_reduced and self.cond_iii

    @property
    def is_primitive(self) -> bool:
        return self.is_semi_primitive and self.cond_iv

    def to_json_dict(self) -> dict:
        def vec(v):
            return None if v is None else [int(x) for x in v]

        def sub(s):
            return None if s is None else [[int(x) for x in row] for row in s.basis]

        return {
            "cond_i": self.cond_i,
            "cond_ii": self.cond_ii,
            "cond_iii": self.cond_iii,
            "cond_iv": self.cond_iv,
            "upper_rank": self.urk,
            "is_reduced": self.is_reduced,
            "is_semi_primitive": self.is_semi_primitive,
            "is_primitive": self.is_primitive,
            "witness_i": vec(self.witness_i),
            "witness_ii": vec(self.witness_ii),
            "witness_iii": sub(self.witness_iii),
            "witness_iv": sub(self.witness_iv),
            "notes": list(self.notes),
        }


def classify(space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP) -> PrimitivityReport:
    """Decide the four conditions and the derived classes for a space."""
    urk = upper_rank(space, cap)[0]
    i_ok, w_i = condition_i(space)
    ii_ok, w_ii = condition_ii(space)
    iii_ok, w_iii = condition_iii(space, cap)
    iv_ok, w_iv = condition_iv(space, cap)
    notes = []
    if space.cols == 1:
        notes.append("single-column space: column condition granted by convention")
    if space.rows == 1:
        notes.append("single-row space: row condition granted by convention")
    if space.rows == 1 and space.cols == 2:
        notes.append(
            "1x2 extremal edge: the equality-shape conclusion still applies here"
        )
    return PrimitivityReport(
        cond_i=i_ok,
        cond_ii=ii_ok,
        cond_iii=iii_ok,
        cond_iv=iv_ok,
        urk=urk,
        witness_i=w_i,
        witness_ii=w_ii,
        witness_iii=w_iii,
        witness_iv=w_iv,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class CompressionReport:
    """A minimal degenerate column compression of a reduced space.

    ``column_window`` is the minimal-dimension subspace whose restriction
    has upper rank below its dimension d; ``row_basis_change`` is an
    invertible m x m matrix T such that T H has its last m - c rows zero for
    every restricted element H; ``core`` is the resulting c x d space, which
    satisfies condition (ii) by construction.
    """

    d: int
    column_window: VectorSubspace
    c: int
    core: MatrixSpace
    row_basis_change: Matrix
    restricted_urk: int

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "column_window": [[int(x) for x in row] for row in self.column_window.basis],
            "c": self.c,
            "core_basis": [m.to_lists() for m in self.core.basis_matrices()],
            "core_shape": list(self.core.shape),
            "row_basis_change": self.row_basis_change.to_lists(),
            "restricted_upper_rank": self.restricted_urk,
        }


def _restriction_has_low_rank(
    space: MatrixSpace, window: VectorSubspace, d: int, cap: int
) -> tuple[bool, int]:
    """Whether urk(space restricted to window) < d, with that upper rank."""
    restricted = restrict_columns(space, window)
    urk = upper_rank(restricted, cap)[0]
    return urk < d, urk


def minimal_degenerate_compression(
    space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP
) -> Optional[CompressionReport]:
    """Search the smallest d with a column window whose restriction has
    upper rank below d, and build the row-compressed core.

    Requires conditions (i) and (ii).  Returns None when no such d exists
    in [1, n-1]; for spaces of upper rank n - 1 that is exactly the
    semi-primitive case.  Ties among windows of the minimal d are broken by
    Grassmannian enumeration order.
    """
    i_ok, _ = condition_i(space)
    ii_ok, _ = condition_ii(space)
    if not (i_ok and ii_ok):
        raise PreconditionViolatedError("compression needs conditions (i) and (ii)")
    p = space.field.p
    n = space.cols
    m = space.rows
    basis = space.basis_arrays()
    for d in range(1, n):
        for window in subspaces_of_vector_space(n, d, space.field):
            # cheap pre-filter: a basis element restricting with rank >= d
            # already rules this window out
            q = window.basis.T
            if basis.shape[0]:
                pre = batch_rank(np.matmul(basis, q[None, :, :]) % p, p)
                if (pre >= d).any():
                    continue
            low, urk = _restriction_has_low_rank(space, window, d, cap)
            if not low:
                continue
            restricted = restrict_columns(space, window)
            # functionals on the row index that kill every restricted element
            dead = kernel_array(
                np.swapaxes(restricted.basis_arrays(), 1, 2).reshape(-1, m)
                if restricted.dim
                else np.zeros((1, m), dtype=np.int64),
                p,
            )
            c = m - dead.shape[0]
            if dead.shape[0]:
                completed = complete_to_invertible(dead, m, p)
                # completion rows first, killed functionals last
                change = np.vstack([completed[dead.shape[0] :], dead])
            else:
                change = np.eye(m, dtype=np.int64)
            moved = np.matmul(change[None, :, :], restricted.basis_arrays()) % p
            assert not moved[:, c:, :].any()
            core = MatrixSpace.from_vectorized(space.field, c, d, moved[:, :c, :])
            core_ok, _ = condition_ii(core)
            assert core_ok, "compressed core must satisfy condition (ii)"
            return CompressionReport(
                d=d,
                column_window=window,
                c=c,
                core=core,
                row_basis_change=Matrix(space.field, change),
                restricted_urk=urk,
            )
    return None
