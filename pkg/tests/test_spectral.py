import numpy as np

from msw import (
    FieldSpec,
    Matrix,
    MatrixSpace,
    VectorSubspace,
    affine_translation_is_trivial_spectrum,
    alternating_space,
    eigenvalues_in_field,
    image_of_vector,
    is_irreducible,
    is_nilpotent,
    is_nilpotent_space,
    is_totally_intransitive,
    is_trivial_spectrum,
    span,
    spectral_report,
    strict_upper_triangular_space,
    transform_similar,
)
from msw.constructions import random_invertible, random_space
from msw.spaces import elements

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def test_trivial_spectrum_examples():
    assert is_trivial_spectrum(strict_upper_triangular_space(3, F2))[0]
    # Alt_2 over GF(3): det(aJ - tI) = t^2 + a^2 has no root since -1 is a non-square
    assert is_trivial_spectrum(alternating_space(2, F3))[0]
    ok, witness = is_trivial_spectrum(alternating_space(3, F3))
    assert not ok
    mat, lam = witness
    assert lam != 0
    assert lam in eigenvalues_in_field(mat)


def test_trivial_spectrum_witness_is_first():
    # oracle: scan elements in order, find the first with a non-zero eigenvalue
    rng = np.random.default_rng(20)
    checked = 0
    while checked < 12:
        p = int(rng.choice([2, 3]))
        f = FieldSpec(p)
        s = random_space(f, 3, 3, int(rng.integers(1, 4)), rng)
        ok, witness = is_trivial_spectrum(s)
        if ok:
            continue
        checked += 1
        for m in elements(s):
            eigs = sorted(e for e in eigenvalues_in_field(m) if e)
            if eigs:
                assert witness == (m, eigs[0])
                break


def test_nilpotent_space_examples():
    assert is_nilpotent_space(strict_upper_triangular_space(4, F2))[0]
    assert is_nilpotent_space(MatrixSpace.zero(F3, 2, 2))[0]
    ok, witness = is_nilpotent_space(alternating_space(2, F3))
    assert not ok
    assert not is_nilpotent(witness)


def test_image_of_vector_examples():
    s = strict_upper_triangular_space(3, F2)
    assert image_of_vector(s, [0, 0, 0]).dim == 0
    img = image_of_vector(s, [0, 0, 1])
    assert img == VectorSubspace.span(F2, [[1, 0, 0], [0, 1, 0]])
    full = MatrixSpace.full(F3, 3, 3)
    assert image_of_vector(full, [1, 2, 0]).is_full()


def test_totally_intransitive_examples():
    ok, witness = is_totally_intransitive(MatrixSpace.full(F2, 2, 2))
    assert not ok and witness is not None
    assert image_of_vector(MatrixSpace.full(F2, 2, 2), witness).is_full()
    assert is_totally_intransitive(strict_upper_triangular_space(3, F2))[0]
    assert is_totally_intransitive(alternating_space(2, F3))[0]


def test_irreducible_examples():
    ok, witness = is_irreducible(strict_upper_triangular_space(3, F2))
    assert not ok
    # first projective representative with a proper closure is e2, whose
    # orbit closure is the coordinate plane; the common-kernel line is
    # invariant too but comes later in the scan order
    assert witness == VectorSubspace.span(F2, [[1, 0, 0], [0, 1, 0]])
    line = VectorSubspace.span(F2, [[1, 0, 0]])
    for b in strict_upper_triangular_space(3, F2).basis_matrices():
        assert line.contains(b.apply([1, 0, 0]))
    assert is_irreducible(MatrixSpace.full(F2, 2, 2))[0]
    # invariant line for Alt_2 over GF(3) would need a square root of -1
    assert is_irreducible(alternating_space(2, F3))[0]


def test_irreducible_witness_is_invariant():
    rng = np.random.default_rng(21)
    found = 0
    while found < 10:
        p = int(rng.choice([2, 3]))
        f = FieldSpec(p)
        s = random_space(f, 3, 3, int(rng.integers(1, 3)), rng)
        ok, witness = is_irreducible(s)
        if ok:
            continue
        found += 1
        assert 0 < witness.dim < 3
        for b in s.basis_matrices():
            for v in witness.basis_vectors():
                assert witness.contains(b.apply(v))


def test_implication_chain_seeded():
    rng = np.random.default_rng(22)
    nil_seen = ts_seen = 0
    for _ in range(300):
        p = int(rng.choice([2, 3, 5]))
        f = FieldSpec(p)
        n = int(rng.integers(1, 4))
        s = random_space(f, n, n, int(rng.integers(0, min(n * n, 3) + 1)), rng)
        nil = is_nilpotent_space(s)[0]
        ts = is_trivial_spectrum(s)[0]
        ti = is_totally_intransitive(s)[0]
        if nil:
            nil_seen += 1
            assert ts
        if ts:
            ts_seen += 1
            assert ti
    assert nil_seen > 5 and ts_seen > 5


def test_similarity_invariance():
    rng = np.random.default_rng(23)
    for _ in range(40):
        p = int(rng.choice([2, 3]))
        f = FieldSpec(p)
        n = int(rng.integers(2, 4))
        s = random_space(f, n, n, int(rng.integers(0, 4)), rng)
        moved = transform_similar(s, random_invertible(f, n, rng))
        assert is_trivial_spectrum(s)[0] == is_trivial_spectrum(moved)[0]
        assert is_nilpotent_space(s)[0] == is_nilpotent_space(moved)[0]
        assert is_irreducible(s)[0] == is_irreducible(moved)[0]
        assert is_totally_intransitive(s)[0] == is_totally_intransitive(moved)[0]


def test_affine_translation_examples():
    assert affine_translation_is_trivial_spectrum(strict_upper_triangular_space(3, F2))
    line_of_identity = span([Matrix.identity(F3, 2)])
    assert not affine_translation_is_trivial_spectrum(line_of_identity)
    conj = transform_similar(strict_upper_triangular_space(3, F5), random_invertible(F5, 3, 99))
    assert affine_translation_is_trivial_spectrum(conj)


def test_spectral_report_consistency():
    rep = spectral_report(strict_upper_triangular_space(3, F2))
    d = rep.to_json_dict()
    assert d["trivial_spectrum"] and d["nilpotent_space"] and d["totally_intransitive"]
    assert not d["irreducible"]
    rep2 = spectral_report(alternating_space(3, F3))
    d2 = rep2.to_json_dict()
    assert not d2["trivial_spectrum"]
    assert d2["trivial_spectrum_witness"]["eigenvalue"] in (1, 2)
