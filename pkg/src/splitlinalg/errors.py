"""Exceptions raised by splitlinalg."""


class LinalgError(ValueError):
    """Base class for every error raised by this package."""


class ZeroDivisor(LinalgError, ZeroDivisionError):
    """A double number with a vanishing idempotent component was inverted."""


class DomainError(LinalgError):
    """An analytic function was applied outside its domain."""


class DimensionMismatch(LinalgError):
    pass


class Singular(LinalgError):
    pass


class NotHermitian(LinalgError):
    pass


class PivotFailure(LinalgError):
    """Elimination without pivoting hit a vanishing leading principal minor.

    ``minor`` is the order (1-based) of the first failing leading minor.
    """

    def __init__(self, minor, message=None):
        self.minor = minor
        super().__init__(message or f"leading principal minor of order {minor} vanishes")


class PivotZeroDivisor(LinalgError):
    """An LDL pivot of a double matrix is a zero divisor (0-based ``index``)."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"pivot {index} is a zero divisor")


class ZeroDivisorNorm(LinalgError):
    """A squared split norm encountered during orthogonalization is not invertible."""

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"split norm of column {column} is a zero divisor")


class DegenerateColumn(LinalgError):
    """Every entry of a Householder working column is a zero divisor."""

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"column {column} has no invertible entry")


class ClusterAmbiguity(LinalgError):
    """Eigenvalue clustering produced an inconsistent Jordan structure."""


class ReconstructionFailure(LinalgError):
    def __init__(self, residual, bound):
        self.residual = residual
        self.bound = bound
        super().__init__(f"reconstruction residual {residual:.3e} exceeds {bound:.3e}")


class RankMismatch(LinalgError):
    """rank(A), rank(B), rank(AB), rank(BA) are not all equal."""

    def __init__(self, ranks):
        self.ranks = tuple(int(r) for r in ranks)
        super().__init__(
            "rank(A), rank(B), rank(AB), rank(BA) = {}, {}, {}, {}".format(*self.ranks)
        )


class NilpotentBlock(LinalgError):
    """A zero eigenvalue carries a Jordan block larger than 1x1."""


class InvalidParam(LinalgError):
    pass
