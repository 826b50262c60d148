"""msw: an exact workbench for linear subspaces of matrices over GF(p).

Core objects: FieldSpec, Matrix, VectorSubspace, MatrixSpace.  The
submodules cover exact elimination (linalg), space enumeration and
transforms (spaces), spectral predicates (spectral), non-degeneracy
conditions and compressions (primitivity), named constructions
(constructions), pairing-space duality (duality), extremal recognition
(recognition), verifiers and scans (theorems), the file format
(spacefile) and the command line (cli).
"""
from .errors import (
    BadSplitError,
    EnumerationTooLargeError,
    MswError,
    NotABasisError,
    NotInvariantError,
    NotMemberError,
    NotSquareError,
    PreconditionViolatedError,
    ScanTooLargeError,
    ShapeMismatchError,
    SingularMatrixError,
    SpaceFileError,
)
from .linalg import (
    FieldSpec,
    Matrix,
    VectorSubspace,
    det,
    eigenvalues_in_field,
    inverse,
    is_nilpotent,
    kernel,
    left_kernel,
    rank,
    rref,
)
from .spaces import (
    DEFAULT_ELEMENT_CAP,
    MatrixSpace,
    RankProfile,
    compress_rows,
    elements,
    gaussian_binomial,
    matrix_subspaces,
    matrix_subspace_index,
    rank_profile,
    restrict_columns,
    span,
    subspace_index,
    subspaces_of_vector_space,
    transform_equivalent,
    transform_similar,
    upper_rank,
)
from .spectral import (
    SpectralReport,
    affine_translation_is_trivial_spectrum,
    image_of_vector,
    is_irreducible,
    is_nilpotent_space,
    is_totally_intransitive,
    is_trivial_spectrum,
    spectral_report,
)
from .primitivity import (
    CompressionReport,
    PrimitivityReport,
    classify,
    condition_i,
    condition_ii,
    condition_iii,
    condition_iv,
    minimal_degenerate_compression,
)
from .constructions import (
    QuadraticFormSpec,
    alternating_space,
    is_isotropic,
    random_alt_basis,
    random_invertible,
    random_matrix,
    random_space,
    scaled_alternating_space,
    strict_upper_triangular_space,
    transformed_wedge_space,
    wedge_space,
)
from .duality import (
    BlockDecomposition,
    DualSpace,
    ShearTransform,
    build_shear_witness,
    decompose,
    dual_space,
    kernel_of_first_rows,
    shear_conjugate,
    split_along_invariant,
)
from .recognition import (
    EquivalenceVerdict,
    equivalence_probe,
    solve_alternating_congruence,
    strict_triangularization,
)
from .theorems import (
    TheoremReport,
    exhaustive_scan,
    random_probe,
    run_generalized_pipeline,
    verify_atkinson_on_instance,
    verify_gerstenhaber_bound,
)

__version__ = "0.1.0"
