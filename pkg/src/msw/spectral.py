"""Space-level spectral predicates: trivial spectrum, nilpotency,
irreducibility and total intransitivity.

All predicates are pure functions of an immutable square matrix space.
Witness reporting is deterministic: scans run in element or projective
enumeration order and report the first witness found, so partitioned scans
can reproduce the same answer by taking the minimal index.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import EnumerationTooLargeError, NotSquareError
from .linalg import (
    Matrix,
    VectorSubspace,
    batch_det,
    batch_power_is_zero,
    batch_rank,
    projective_index_ranges,
    row_space_array,
)
from .spaces import DEFAULT_ELEMENT_CAP, MatrixSpace, _projective_blocks


def _require_square(space: MatrixSpace) -> None:
    if space.rows != space.cols:
        raise NotSquareError(f"predicate needs a square space, got {space.shape}")


def _check_cap(space: MatrixSpace, cap: int) -> None:
    if space.element_count > cap:
        raise EnumerationTooLargeError(space.element_count, cap)


def is_trivial_spectrum(
    space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP
) -> tuple[bool, Optional[tuple[Matrix, int]]]:
    """Whether no element has a non-zero eigenvalue in GF(p).

    Eigenvalues scale along with elements, so it is enough to test one
    representative per projective class; the witness returned is still the
    first element in enumeration order carrying a non-zero eigenvalue,
    paired with its smallest such eigenvalue.
    """
    _require_square(space)
    _check_cap(space, cap)
    p = space.field.p
    n = space.rows
    if n == 0 or space.dim == 0:
        return True, None
    eye = np.eye(n, dtype=np.int64)
    for start, block in _projective_blocks(space):
        hit_lam = np.zeros(block.shape[0], dtype=np.int64)
        for lam in range(1, p):
            dets = batch_det((block - lam * eye) % p, p)
            fresh = (dets == 0) & (hit_lam == 0)
            hit_lam[fresh] = lam
        if hit_lam.any():
            k = int(np.argmax(hit_lam > 0))
            return False, (Matrix(space.field, block[k]), int(hit_lam[k]))
    return True, None


def is_nilpotent_space(
    space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP
) -> tuple[bool, Optional[Matrix]]:
    """Whether every element N satisfies N**n = 0 (n the side length)."""
    _require_square(space)
    _check_cap(space, cap)
    n = space.rows
    if n == 0 or space.dim == 0:
        return True, None
    for start, block in _projective_blocks(space):
        ok = batch_power_is_zero(block, n, space.field.p)
        if not ok.all():
            return False, Matrix(space.field, block[int(np.argmax(~ok))])
    return True, None


def image_of_vector(space: MatrixSpace, x: np.ndarray) -> VectorSubspace:
    """The subspace {N x : N in space} of GF(p)^m."""
    p = space.field.p
    x = np.asarray(x, dtype=np.int64) % p
    if x.shape != (space.cols,):
        raise NotSquareError(f"vector length {x.shape} does not match {space.cols} columns")
    if space.dim == 0:
        return VectorSubspace.zero(space.field, space.rows)
    images = np.matmul(space.basis_arrays(), x) % p
    return VectorSubspace(space.field, space.rows, row_space_array(images, p))


def _projective_vectors(n: int, p: int) -> np.ndarray:
    """One representative per projective class of non-zero vectors, in order."""
    from .linalg import coefficient_digits

    chunks = []
    for a, b in projective_index_ranges(p, n):
        chunks.append(coefficient_digits(np.arange(a, b, dtype=np.int64), p, n))
    return np.concatenate(chunks) if chunks else np.zeros((0, n), dtype=np.int64)


def is_totally_intransitive(space: MatrixSpace) -> tuple[bool, Optional[np.ndarray]]:
    """Whether {N x : N} is a proper subspace for every non-zero x.

    The witness, when the predicate fails, is the first projective
    representative x whose image is all of GF(p)^n.
    """
    _require_square(space)
    n = space.rows
    p = space.field.p
    if n == 0:
        return True, None
    if space.dim == 0:
        return True, None
    reps = _projective_vectors(n, p)
    basis = space.basis_arrays()
    # images[x] stacks the vectors B_i x; its rank is dim(space applied to x)
    images = np.einsum("dij,xj->xdi", basis, reps) % p
    ranks = batch_rank(images, p)
    full = ranks == n
    if full.any():
        return False, reps[int(np.argmax(full))].copy()
    return True, None


def is_irreducible(space: MatrixSpace) -> tuple[bool, Optional[VectorSubspace]]:
    """Whether no proper non-zero subspace is invariant under every element.

    For each projective representative x, grows the smallest invariant
    subspace containing x by iterated span closure; the space is
    irreducible iff every closure is the whole of GF(p)^n.  The witness is
    the first proper closure found.
    """
    _require_square(space)
    n = space.rows
    p = space.field.p
    if n <= 1:
        return True, None
    basis = space.basis_arrays()
    for x in _projective_vectors(n, p):
        current = row_space_array(x.reshape(1, n), p)
        while True:
            if current.shape[0] == n:
                break
            pushed = np.matmul(basis, current.T) % p if space.dim else np.zeros((0, n, 0))
            stacked = (
                np.vstack([current] + [pushed[i].T for i in range(pushed.shape[0])])
                if space.dim
                else current
            )
            grown = row_space_array(stacked, p)
            if grown.shape[0] == current.shape[0]:
                break
            current = grown
        if current.shape[0] < n:
            return False, VectorSubspace(space.field, n, current)
    return True, None


def affine_translation_is_trivial_spectrum(
    space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP
) -> bool:
    """Whether the affine space {I + N : N in space} avoids singular matrices.

    This holds exactly when the space has trivial spectrum (an eigenvalue
    can always be rescaled onto -1), and the implication is checked here on
    both sides rather than assumed.
    """
    _require_square(space)
    _check_cap(space, cap)
    p = space.field.p
    n = space.rows
    eye = np.eye(n, dtype=np.int64)
    all_invertible = True
    total = space.element_count
    from .spaces import _BLOCK

    for start in range(0, total, _BLOCK):
        block = space.element_block(start, min(start + _BLOCK, total))
        dets = batch_det((block + eye) % p, p)
        if (dets == 0).any():
            all_invertible = False
            break
    trivial, _ = is_trivial_spectrum(space, cap)
    if all_invertible != trivial:  # pragma: no cover - algebraically impossible
        raise AssertionError("invertibility of I + space disagrees with trivial spectrum")
    return all_invertible


@dataclass(frozen=True)
class SpectralReport:
    """Aggregate of the four spectral predicates with their witnesses."""

    trivial_spectrum: bool
    trivial_spectrum_witness: Optional[tuple[Matrix, int]]
    nilpotent_space: bool
    nilpotent_witness: Optional[Matrix]
    irreducible: bool
    invariant_witness: Optional[VectorSubspace]
    totally_intransitive: bool
    intransitivity_witness: Optional[np.ndarray]

    def __post_init__(self):
        if self.nilpotent_space and not self.trivial_spectrum:
            raise AssertionError("nilpotent space must have trivial spectrum")
        if self.trivial_spectrum and not self.totally_intransitive:
            raise AssertionError("trivial spectrum space must be totally intransitive")

    def to_json_dict(self) -> dict:
        def mat(m: Optional[Matrix]):
            return None if m is None else m.to_lists()

        return {
            "trivial_spectrum": self.trivial_spectrum,
            "trivial_spectrum_witness": (
                None
                if self.trivial_spectrum_witness is None
                else {
                    "matrix": mat(self.trivial_spectrum_witness[0]),
                    "eigenvalue": self.trivial_spectrum_witness[1],
                }
            ),
            "nilpotent_space": self.nilpotent_space,
            "nilpotent_witness": mat(self.nilpotent_witness),
            "irreducible": self.irreducible,
            "invariant_witness": (
                None
                if self.invariant_witness is None
                else [[int(v) for v in row] for row in self.invariant_witness.basis]
            ),
            "totally_intransitive": self.totally_intransitive,
            "intransitivity_witness": (
                None
                if self.intransitivity_witness is None
                else [int(v) for v in self.intransitivity_witness]
            ),
        }


def spectral_report(space: MatrixSpace, cap: int = DEFAULT_ELEMENT_CAP) -> SpectralReport:
    trivial, ts_wit = is_trivial_spectrum(space, cap)
    nilpotent, nil_wit = is_nilpotent_space(space, cap)
    irreducible, inv_wit = is_irreducible(space)
    intransitive, ti_wit = is_totally_intransitive(space)
    return SpectralReport(
        trivial_spectrum=trivial,
        trivial_spectrum_witness=ts_wit,
        nilpotent_space=nilpotent,
        nilpotent_witness=nil_wit,
        irreducible=irreducible,
        invariant_witness=inv_wit,
        totally_intransitive=intransitive,
        intransitivity_witness=ti_wit,
    )
