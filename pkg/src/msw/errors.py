"""Typed errors shared across the workbench."""


class MswError(Exception):
    """Base class for all workbench errors."""


class ShapeMismatchError(MswError):
    """Operands do not share the required shape or field."""


class NotSquareError(MswError):
    """A square matrix or matrix space was required."""


class SingularMatrixError(MswError):
    """An invertible matrix was required."""


class NotABasisError(MswError):
    """A list of matrices was required to be a basis of a known space."""


class NotMemberError(MswError):
    """A matrix was required to belong to a given space."""


class NotInvariantError(MswError):
    """A subspace was required to be proper, non-zero and invariant."""


class BadSplitError(MswError):
    """A block split index was out of range."""


class PreconditionViolatedError(MswError):
    """A documented operation precondition does not hold."""


class EnumerationTooLargeError(MswError):
    """An exact enumeration would exceed the configured cap.

    Carries the exact element count and the cap so callers can decide to
    raise the cap or switch to randomized probing.
    """

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"enumeration of {count} elements exceeds cap {cap}")


class ScanTooLargeError(MswError):
    """An exhaustive scan would visit more spaces than the ceiling allows."""

    def __init__(self, count: int, ceiling: int):
        self.count = count
        self.ceiling = ceiling
        super().__init__(f"scan over {count} spaces exceeds ceiling {ceiling}")


class SpaceFileError(MswError):
    """A space file failed to parse or validate.

    ``details`` lists human-readable diagnostics (one per problem found).
    """

    def __init__(self, message: str, details: tuple[str, ...] = ()):
        self.details = details
        super().__init__(message)
