import numpy as np
import pytest

from msw import (
    FieldSpec,
    Matrix,
    MatrixSpace,
    NotABasisError,
    QuadraticFormSpec,
    SingularMatrixError,
    alternating_space,
    classify,
    is_isotropic,
    random_alt_basis,
    random_invertible,
    random_space,
    rank_profile,
    scaled_alternating_space,
    strict_upper_triangular_space,
    transformed_wedge_space,
    upper_rank,
    wedge_space,
)
from msw.constructions import pair_order

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def test_alternating_space_dims():
    assert alternating_space(1, F3).dim == 0
    assert alternating_space(2, F3).dim == 1
    assert alternating_space(4, F5).dim == 6
    for m in alternating_space(4, F5).basis_matrices():
        assert (m + m.transpose()).is_zero()
        assert not m.data.diagonal().any()


def test_alternating_char2_zero_diagonal():
    for m in alternating_space(3, F2).basis_matrices():
        assert not m.data.diagonal().any()
        assert m == m.transpose()  # skew = symmetric in characteristic 2


def test_strict_ut_dims_match_alternating():
    for n in range(1, 6):
        assert (
            strict_upper_triangular_space(n, F3).dim
            == alternating_space(n, F3).dim
            == n * (n - 1) // 2
        )


def test_strict_ut_elements_nilpotent():
    from msw import elements, is_nilpotent

    s = strict_upper_triangular_space(3, F2)
    elems = list(elements(s))
    assert len(elems) == 8
    assert all(is_nilpotent(m) for m in elems)


def test_wedge_space_small():
    assert wedge_space(2, F3) == MatrixSpace.full(F3, 1, 2)
    w3 = wedge_space(3, F3)
    assert w3.shape == (3, 3)
    assert w3.dim == 3
    assert upper_rank(w3)[0] == 2
    # generator for the first coordinate vector, by hand:
    # e1^T(e1e2^T - e2e1^T) = e2^T, e1^T(e1e3^T - e3e1^T) = e3^T, third pair gives 0
    gen = Matrix.from_rows(F3, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert w3.contains(gen)


def test_wedge_dimension_and_shape_families():
    for n, f in ((3, F3), (4, F3), (4, F5)):
        w = wedge_space(n, f)
        assert w.dim == n
        assert w.rows == n * (n - 1) // 2
        assert upper_rank(w)[0] == n - 1


def test_wedge_primitive_for_n3():
    rep = classify(wedge_space(3, F3))
    assert rep.is_semi_primitive and rep.is_primitive


def test_transformed_wedge_identity_inputs():
    from msw.constructions import alternating_basis_arrays

    basis = [Matrix(F3, a) for a in alternating_basis_arrays(3, 3)]
    tw = transformed_wedge_space(3, F3, basis, Matrix.identity(F3, 3))
    assert tw == wedge_space(3, F3)


def test_transformed_wedge_random_same_profile():
    rng = np.random.default_rng(30)
    for seed in range(4):
        basis = random_alt_basis(F3, 3, seed)
        frame = random_invertible(F3, 3, seed + 100)
        tw = transformed_wedge_space(3, F3, basis, frame)
        assert rank_profile(tw) == rank_profile(wedge_space(3, F3))


def test_transformed_wedge_rejects_bad_inputs():
    basis = random_alt_basis(F3, 3, 0)
    with pytest.raises(SingularMatrixError):
        transformed_wedge_space(3, F3, basis, Matrix.zeros(F3, 3, 3))
    bad = basis[:-1] + [basis[0]]
    with pytest.raises(NotABasisError):
        transformed_wedge_space(3, F3, bad, Matrix.identity(F3, 3))
    with pytest.raises(NotABasisError):
        transformed_wedge_space(3, F3, basis[:-1], Matrix.identity(F3, 3))


def test_scaled_alternating_space():
    assert scaled_alternating_space(Matrix.identity(F3, 3)) == alternating_space(3, F3)
    rng = np.random.default_rng(31)
    for seed in range(5):
        p_mat = random_invertible(F5, 4, seed)
        s = scaled_alternating_space(p_mat)
        assert s.dim == 6
    with pytest.raises(SingularMatrixError):
        scaled_alternating_space(Matrix.zeros(F3, 2, 2))


def test_isotropy_examples():
    # x^2 + y^2 over GF(3): -1 is a non-square, so only the origin vanishes
    iso, w = is_isotropic(QuadraticFormSpec(Matrix.identity(F3, 2)))
    assert not iso and w is None
    iso, w = is_isotropic(QuadraticFormSpec(Matrix.identity(F3, 3)))
    assert iso and w.tolist() == [1, 1, 1]
    iso, w = is_isotropic(QuadraticFormSpec(Matrix.identity(F2, 2)))
    assert iso and w.tolist() == [1, 1]


def test_isotropy_conjunction_for_3x3_scales():
    # every ternary form over a finite field is isotropic, so no 3x3 scale
    # yields an irreducible trivial-spectrum space
    from msw import is_irreducible, is_trivial_spectrum

    for seed in range(8):
        p_mat = random_invertible(F3, 3, seed)
        iso, _ = is_isotropic(QuadraticFormSpec(p_mat))
        assert iso
        space = scaled_alternating_space(p_mat)
        assert not (is_trivial_spectrum(space)[0] and is_irreducible(space)[0])


def test_isotropy_witness_value_zero():
    rng = np.random.default_rng(32)
    for seed in range(10):
        p_mat = random_invertible(F5, 3, seed)
        form = QuadraticFormSpec(p_mat)
        iso, w = is_isotropic(form)
        # ternary forms over a finite field always have a non-trivial zero
        assert iso
        assert form.value(w) == 0 and w.any()


def test_random_generators_reproducible():
    assert random_invertible(F5, 3, 7) == random_invertible(F5, 3, 7)
    assert random_space(F3, 2, 2, 2, 9) == random_space(F3, 2, 2, 2, 9)
    a = [m.to_lists() for m in random_alt_basis(F3, 3, 5)]
    b = [m.to_lists() for m in random_alt_basis(F3, 3, 5)]
    assert a == b


def test_random_space_dim_exact():
    rng = np.random.default_rng(33)
    for _ in range(20):
        dim = int(rng.integers(0, 5))
        s = random_space(F3, 2, 3, dim, rng)
        assert s.dim == dim


def test_pair_order_lexicographic():
    assert pair_order(4) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
