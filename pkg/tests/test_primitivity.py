import numpy as np
import pytest

from msw import (
    FieldSpec,
    Matrix,
    MatrixSpace,
    PreconditionViolatedError,
    classify,
    condition_i,
    condition_ii,
    condition_iii,
    condition_iv,
    matrix_subspaces,
    minimal_degenerate_compression,
    restrict_columns,
    span,
    strict_upper_triangular_space,
    transform_equivalent,
    upper_rank,
    wedge_space,
)
from msw.constructions import random_invertible, random_space
from msw.primitivity import condition_iii_by_scan, condition_iv_by_scan

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def test_condition_i_examples():
    assert condition_i(MatrixSpace.full(F3, 2, 3))[0]
    # a space whose matrices all have last column zero
    mats = [Matrix.from_rows(F2, [[1, 0], [0, 0]]), Matrix.from_rows(F2, [[0, 0], [1, 0]])]
    ok, witness = condition_i(span(mats))
    assert not ok and witness.tolist() == [0, 1]
    ok, witness = condition_i(strict_upper_triangular_space(3, F2))
    assert not ok and witness.tolist() == [1, 0, 0]


def test_condition_ii_examples():
    assert condition_ii(MatrixSpace.full(F3, 2, 3))[0]
    mats = [Matrix.from_rows(F2, [[1, 0], [0, 0]]), Matrix.from_rows(F2, [[0, 1], [0, 0]])]
    ok, witness = condition_ii(span(mats))
    assert not ok and witness.tolist() == [0, 1]
    ok, witness = condition_ii(strict_upper_triangular_space(3, F2))
    assert not ok and witness.tolist() == [0, 0, 1]


def test_condition_iii_examples():
    assert condition_iii(MatrixSpace.full(F2, 1, 2))[0]
    ok, witness = condition_iii(strict_upper_triangular_space(3, F2))
    assert not ok
    # the witness hyperplane must genuinely drop the upper rank
    s = strict_upper_triangular_space(3, F2)
    assert upper_rank(restrict_columns(s, witness))[0] < upper_rank(s)[0]
    assert witness.contains([1, 0, 0])
    assert condition_iii(wedge_space(3, F3))[0]


def test_condition_iv_examples():
    assert condition_iv(MatrixSpace.full(F2, 1, 2))[0]  # single row: by convention
    assert not condition_iv(strict_upper_triangular_space(3, F2))[0]
    assert condition_iv(wedge_space(3, F3))[0]


def test_condition_iii_iv_cross_route_exhaustive_2x2():
    # every subspace of Mat_2(GF(2)): 67 spaces across dims 0..4
    total = 0
    for dim in range(5):
        for s in matrix_subspaces(2, 2, dim, F2):
            total += 1
            assert condition_iii(s)[0] == condition_iii_by_scan(s)[0]
            assert condition_iv(s)[0] == condition_iv_by_scan(s)[0]
    assert total == 1 + 15 + 35 + 15 + 1


def test_condition_iii_iv_cross_route_random():
    rng = np.random.default_rng(40)
    for _ in range(40):
        p = int(rng.choice([2, 3]))
        f = FieldSpec(p)
        m, n = int(rng.integers(1, 4)), int(rng.integers(2, 4))
        s = random_space(f, m, n, int(rng.integers(0, min(m * n, 3) + 1)), rng)
        assert condition_iii(s)[0] == condition_iii_by_scan(s)[0]
        assert condition_iv(s)[0] == condition_iv_by_scan(s)[0]


def test_classify_wedge_and_strict_ut():
    rep = classify(wedge_space(3, F3))
    assert rep.is_reduced and rep.is_semi_primitive and rep.is_primitive
    assert rep.urk == 2
    rep = classify(strict_upper_triangular_space(3, F2))
    assert not rep.cond_i and not rep.cond_ii
    assert not rep.is_reduced
    rep = classify(wedge_space(2, F3))
    assert rep.is_semi_primitive
    assert any("1x2" in note for note in rep.notes)


def test_classify_equivalence_invariance():
    rng = np.random.default_rng(41)
    for _ in range(25):
        p = int(rng.choice([2, 3]))
        f = FieldSpec(p)
        m, n = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        s = random_space(f, m, n, int(rng.integers(0, min(m * n, 3) + 1)), rng)
        moved = transform_equivalent(
            s, random_invertible(f, m, rng), random_invertible(f, n, rng)
        )
        a, b = classify(s), classify(moved)
        assert (a.cond_i, a.cond_ii, a.cond_iii, a.cond_iv, a.urk) == (
            b.cond_i, b.cond_ii, b.cond_iii, b.cond_iv, b.urk,
        )


def test_report_class_consistency():
    rep = classify(wedge_space(3, F3))
    d = rep.to_json_dict()
    assert d["is_reduced"] == (d["cond_i"] and d["cond_ii"])
    assert d["is_semi_primitive"] == (d["is_reduced"] and d["cond_iii"])
    assert d["is_primitive"] == (d["is_semi_primitive"] and d["cond_iv"])


# -- minimal degenerate compression ------------------------------------------------

def test_compression_none_for_semi_primitive():
    assert minimal_degenerate_compression(wedge_space(3, F3)) is None
    assert minimal_degenerate_compression(MatrixSpace.full(F3, 1, 2)) is None


def test_compression_precondition():
    with pytest.raises(PreconditionViolatedError):
        minimal_degenerate_compression(strict_upper_triangular_space(3, F2))


def test_compression_single_row_wide_space():
    # all 1x3 rows: any plane restriction has upper rank 1 < 2, no line works
    s = MatrixSpace.full(F3, 1, 3)
    rep = minimal_degenerate_compression(s)
    assert rep is not None
    assert rep.d == 2
    assert rep.c == 1
    assert rep.restricted_urk == 1
    assert rep.core.shape == (1, 2)
    # first plane in Grassmannian order
    assert rep.column_window.basis.tolist() == [[1, 0, 0], [0, 1, 0]]


def test_compression_report_postconditions():
    rng = np.random.default_rng(42)
    found = 0
    for trial in range(400):
        p = int(rng.choice([2, 3]))
        f = FieldSpec(p)
        m, n = int(rng.integers(1, 5)), int(rng.integers(2, 5))
        s = random_space(f, m, n, int(rng.integers(1, min(m * n, 3) + 1)), rng)
        if not (condition_i(s)[0] and condition_ii(s)[0]):
            continue
        rep = minimal_degenerate_compression(s)
        if rep is None:
            continue
        found += 1
        assert 1 <= rep.d <= n - 1
        restricted = restrict_columns(s, rep.column_window)
        assert upper_rank(restricted)[0] < rep.d
        # minimality: no smaller window dimension admits a witness (oracle scan)
        from msw import subspaces_of_vector_space

        for d in range(1, rep.d):
            for w in subspaces_of_vector_space(n, d, f):
                assert upper_rank(restrict_columns(s, w))[0] >= d
        # row change moves the restricted space onto the core over zero rows
        moved = transform_equivalent(
            restricted, rep.row_basis_change, Matrix.identity(f, rep.d)
        )
        for b in moved.basis_arrays():
            assert not b[rep.c :, :].any()
        assert condition_ii(rep.core)[0]
        assert upper_rank(rep.core)[0] < rep.d
        if found >= 10:
            break
    assert found >= 5


def test_compression_none_iff_semi_primitive_at_critical_rank():
    # with conditions (i), (ii) and upper rank n-1, absence of a compression
    # is exactly semi-primitivity; checked on every 2x2 space over GF(2)
    for dim in range(5):
        for s in matrix_subspaces(2, 2, dim, F2):
            if not (condition_i(s)[0] and condition_ii(s)[0]):
                continue
            rep = classify(s)
            comp = minimal_degenerate_compression(s)
            if rep.urk == s.cols - 1:
                assert (comp is None) == rep.is_semi_primitive
            if comp is None and rep.urk == s.cols - 1:
                assert rep.is_semi_primitive


def test_compression_atkinson_consistency():
    # c <= d(d-1)/2 whenever the field is larger than the core's upper rank
    rng = np.random.default_rng(43)
    checked = 0
    for trial in range(300):
        p = int(rng.choice([3, 5]))
        f = FieldSpec(p)
        m, n = int(rng.integers(1, 4)), int(rng.integers(2, 5))
        s = random_space(f, m, n, int(rng.integers(1, min(m * n, 3) + 1)), rng)
        if not (condition_i(s)[0] and condition_ii(s)[0]):
            continue
        rep = minimal_degenerate_compression(s)
        if rep is None:
            continue
        core_urk = upper_rank(rep.core)[0]
        if p > core_urk:
            checked += 1
            assert rep.c <= rep.d * (rep.d - 1) // 2
    assert checked >= 3
