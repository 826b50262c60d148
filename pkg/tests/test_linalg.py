import numpy as np
import pytest

from msw import (
    FieldSpec,
    Matrix,
    VectorSubspace,
    NotSquareError,
    ShapeMismatchError,
    SingularMatrixError,
    det,
    eigenvalues_in_field,
    inverse,
    is_nilpotent,
    kernel,
    left_kernel,
    rank,
    rref,
)
from msw.linalg import (
    batch_det,
    batch_rank,
    coefficient_digits,
    complete_to_invertible,
    is_prime,
    projective_index_ranges,
)


F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def test_field_validation():
    assert FieldSpec(2).p == 2
    assert FieldSpec(65521).p == 65521
    for bad in (0, 1, 4, 9, 65536, 65537):
        with pytest.raises((ValueError, TypeError)):
            FieldSpec(bad)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13}
    for k in range(2, 14):
        assert is_prime(k) == (k in primes)


def test_matrix_entries_reduced_and_immutable():
    a = Matrix.from_rows(F3, [[4, -1], [3, 5]])
    assert a.to_lists() == [[1, 2], [0, 2]]
    with pytest.raises(ValueError):
        a.data[0, 0] = 7


def test_matrix_arithmetic():
    a = Matrix.from_rows(F3, [[1, 2], [0, 1]])
    b = Matrix.from_rows(F3, [[2, 0], [1, 1]])
    assert (a + b).to_lists() == [[0, 2], [1, 2]]
    assert (a - b).to_lists() == [[2, 2], [2, 0]]
    assert (a @ b).to_lists() == [[(1 * 2 + 2 * 1) % 3, 2], [1, 1]]
    assert a.scale(2).to_lists() == [[2, 1], [0, 2]]
    assert (-a + a).is_zero()
    with pytest.raises(ShapeMismatchError):
        a + Matrix.zeros(F3, 1, 2)
    with pytest.raises(ShapeMismatchError):
        a + Matrix.from_rows(F5, [[1, 2], [0, 1]])


# -- rref ------------------------------------------------------------------

def test_rref_identity_gf2():
    res = rref(Matrix.identity(F2, 3))
    assert res.rank == 3
    assert res.reduced == Matrix.identity(F2, 3)


def test_rref_equal_rows_gf2():
    res = rref(Matrix.from_rows(F2, [[1, 1], [1, 1]]))
    assert res.rank == 1
    assert res.pivots == (0,)


def test_rref_gf3_invertible():
    # det([[0,1],[2,0]]) = -2 = 1 mod 3, hand elimination gives the identity
    res = rref(Matrix.from_rows(F3, [[0, 1], [2, 0]]))
    assert res.rank == 2
    assert res.reduced == Matrix.identity(F3, 2)


def test_rref_postconditions_random():
    # independent oracle: structural RREF checks plus R = T A with T invertible
    rng = np.random.default_rng(1)
    for _ in range(60):
        p = int(rng.choice([2, 3, 5]))
        f = FieldSpec(p)
        m, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        a = Matrix(f, rng.integers(0, p, (m, n)))
        res = rref(a)
        r = res.reduced
        assert res.transform @ a == r
        assert rank(res.transform) == m
        assert len(res.pivots) == res.rank
        prev = -1
        for i, c in enumerate(res.pivots):
            assert c > prev
            prev = c
            col = r.data[:, c]
            assert col[i] == 1 and (np.delete(col, i) == 0).all()
        assert not r.data[res.rank :].any()


def test_rank_transpose_symmetry():
    rng = np.random.default_rng(2)
    for _ in range(40):
        p = int(rng.choice([2, 3, 5]))
        f = FieldSpec(p)
        a = Matrix(f, rng.integers(0, p, (int(rng.integers(1, 5)), int(rng.integers(1, 5)))))
        assert rank(a) == rank(a.transpose())


# -- kernel ------------------------------------------------------------------

def test_kernel_identity_and_zero():
    assert kernel(Matrix.identity(F2, 2)).dim == 0
    assert kernel(Matrix.zeros(F3, 2, 2)) == VectorSubspace.full(F3, 2)


def test_kernel_rank_one_gf3():
    # A = e1 e2^T sends x to (x2, 0); kernel is the first axis
    k = kernel(Matrix.from_rows(F3, [[0, 1], [0, 0]]))
    assert k.dim == 1
    assert k.basis.tolist() == [[1, 0]]


def test_left_kernel_mirrors_kernel_of_transpose():
    rng = np.random.default_rng(99)
    for _ in range(20):
        p = int(rng.choice([2, 3, 5]))
        f = FieldSpec(p)
        a = Matrix(f, rng.integers(0, p, (3, 4)))
        lk = left_kernel(a)
        assert lk == kernel(a.transpose())
        for u in lk.basis_vectors():
            assert not ((u @ a.data) % p).any()


def test_kernel_annihilates_random():
    rng = np.random.default_rng(3)
    for _ in range(40):
        p = int(rng.choice([2, 3, 5]))
        f = FieldSpec(p)
        a = Matrix(f, rng.integers(0, p, (3, 4)))
        k = kernel(a)
        assert k.dim == 4 - rank(a)
        for v in k.basis_vectors():
            assert not a.apply(v).any()


# -- inverse ------------------------------------------------------------------

def test_inverse_examples():
    assert inverse(Matrix.identity(F3, 3)) == Matrix.identity(F3, 3)
    a = Matrix.from_rows(F3, [[0, 1], [2, 0]])
    ainv = inverse(a)
    assert ainv.to_lists() == [[0, 2], [1, 0]]
    assert a @ ainv == Matrix.identity(F3, 2)
    with pytest.raises(SingularMatrixError):
        inverse(Matrix.from_rows(F2, [[1, 1], [1, 1]]))
    with pytest.raises(NotSquareError):
        inverse(Matrix.zeros(F2, 2, 3))


def test_inverse_involution_and_kernel():
    rng = np.random.default_rng(4)
    for _ in range(30):
        p = int(rng.choice([3, 5]))
        f = FieldSpec(p)
        while True:
            a = Matrix(f, rng.integers(0, p, (3, 3)))
            if rank(a) == 3:
                break
        assert inverse(inverse(a)) == a
        assert kernel(a).dim == 0


# -- eigenvalues and nilpotency -------------------------------------------

def test_eigenvalues_triangular_and_identity():
    n = Matrix.from_rows(F3, [[0, 1, 2], [0, 0, 1], [0, 0, 0]])
    assert eigenvalues_in_field(n) == {0}
    assert eigenvalues_in_field(Matrix.identity(F3, 2)) == {1}


def test_eigenvalues_skew_3x3_gf3():
    # char poly of this skew matrix is -t(t^2 + 2) = -t(t-1)(t+1) mod 3
    n = Matrix.from_rows(F3, [[0, 1, 1], [2, 0, 0], [2, 0, 0]])
    assert eigenvalues_in_field(n) == {0, 1, 2}


def test_eigenvalues_cross_checked_by_rank():
    rng = np.random.default_rng(5)
    for _ in range(30):
        p = int(rng.choice([2, 3, 5]))
        f = FieldSpec(p)
        n = Matrix(f, rng.integers(0, p, (3, 3)))
        eigs = eigenvalues_in_field(n)
        for lam in range(p):
            shifted = n - Matrix.identity(f, 3).scale(lam)
            assert (rank(shifted) < 3) == (lam in eigs)


def test_zero_eigenvalue_iff_singular():
    rng = np.random.default_rng(6)
    for _ in range(30):
        p = int(rng.choice([2, 3, 5]))
        f = FieldSpec(p)
        n = Matrix(f, rng.integers(0, p, (3, 3)))
        assert (0 in eigenvalues_in_field(n)) == (rank(n) < 3)


def test_is_nilpotent_examples():
    assert is_nilpotent(Matrix.from_rows(F2, [[0, 1], [0, 0]]))
    assert not is_nilpotent(Matrix.identity(F2, 1))
    # [[0,1],[2,0]] squares to 2I over GF(3)
    assert not is_nilpotent(Matrix.from_rows(F3, [[0, 1], [2, 0]]))


def test_nilpotent_implies_only_zero_eigenvalue():
    rng = np.random.default_rng(7)
    hits = 0
    for _ in range(200):
        p = int(rng.choice([2, 3]))
        f = FieldSpec(p)
        n = Matrix(f, rng.integers(0, p, (3, 3)))
        if is_nilpotent(n):
            hits += 1
            assert eigenvalues_in_field(n) <= {0}
    assert hits > 0


# -- subspaces ----------------------------------------------------------------

def test_vector_subspace_canonical():
    a = VectorSubspace.span(F3, [[1, 2, 0], [0, 0, 1]])
    b = VectorSubspace.span(F3, [[1, 2, 1], [0, 0, 2], [1, 2, 2]])
    assert a == b
    assert a.contains([2, 1, 1])
    assert not a.contains([0, 1, 0])


def test_annihilator_dimensions():
    v = VectorSubspace.span(F5, [[1, 1, 0, 0], [0, 0, 1, 4]])
    ann = v.annihilator()
    assert ann.dim == 2
    for f_ in ann.basis_vectors():
        for u in v.basis_vectors():
            assert int(np.dot(f_, u)) % 5 == 0


def test_complete_to_invertible_deterministic():
    rows = np.array([[1, 1, 0]])
    full = complete_to_invertible(rows, 3, 2)
    # lowest-index standard vectors appended greedily: e0 first, e1 now dependent
    assert full.tolist() == [[1, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert rank(Matrix(F2, full)) == 3


# -- batched kernels ----------------------------------------------------------

def test_batch_det_matches_scalar():
    rng = np.random.default_rng(8)
    for n in (1, 2, 3, 4, 5, 6):
        for p in (2, 3, 5, 65521):
            f = FieldSpec(p)
            mats = rng.integers(0, p, (20, n, n))
            dets = batch_det(mats, p)
            # oracle: rank deficiency decides vanishing; scalar recursion checks values
            for k in range(20):
                a = Matrix(f, mats[k])
                assert (dets[k] == 0) == (rank(a) < n)
            # multiplicativity spot check
            prod = np.matmul(mats[:10], mats[10:]) % p
            assert (batch_det(prod, p) == dets[:10] * dets[10:] % p).all()


def test_batch_rank_matches_scalar():
    rng = np.random.default_rng(9)
    for p in (2, 3, 5):
        f = FieldSpec(p)
        mats = rng.integers(0, p, (50, 3, 4))
        ranks = batch_rank(mats, p)
        for k in range(50):
            assert ranks[k] == rank(Matrix(f, mats[k]))


def test_coefficient_digit_order():
    digits = coefficient_digits(np.arange(9), 3, 2)
    assert digits.tolist() == [
        [0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2], [2, 0], [2, 1], [2, 2],
    ]


def test_projective_ranges_cover_and_normalize():
    p, d = 3, 3
    seen = []
    for a, b in projective_index_ranges(p, d):
        for k in range(a, b):
            digits = coefficient_digits(np.array([k]), p, d)[0]
            lead = digits[np.argmax(digits != 0)]
            assert lead == 1
            seen.append(tuple(digits))
    assert len(seen) == (p**d - 1) // (p - 1)
    assert len(set(seen)) == len(seen)
