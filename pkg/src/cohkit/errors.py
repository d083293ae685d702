"""Exception hierarchy used across the package."""


class CohkitError(Exception):
    """Base class for all cohkit errors."""


class NonHermitianError(CohkitError):
    """Matrix expected to be Hermitian exceeds the Hermiticity tolerance."""


class ConvergenceFailureError(CohkitError):
    """The underlying eigen/SVD solver failed to converge."""


class NotPSDError(CohkitError):
    """Matrix has an eigenvalue below the allowed negative slack."""


class TraceMismatchError(CohkitError):
    """Trace differs from 1 beyond tolerance."""


class MissingSplitError(CohkitError):
    """Operation needs a bipartite (D_A, D_B) split the state does not carry."""


class InvalidDimensionError(CohkitError):
    """Dimension argument outside the supported range."""


class DimensionMismatchError(CohkitError):
    """Operands have incompatible dimensions."""


class IncompleteBasisError(CohkitError):
    """Operation requires a complete (N = D^2) operator basis."""


class IncompatibleNormForBoundError(CohkitError):
    """Schatten-1 norm requested on a truncated basis without the approximate flag.

    Only the Frobenius norm guarantees a lower bound under truncation; the
    Schatten-1 variant is an approximation and must be requested explicitly.
    """


class CompleteBasisGivenError(CohkitError):
    """Truncated estimator called with a complete basis."""


class InvalidRankError(CohkitError):
    """Requested rank outside [1, dim]."""


class NotTracePreservingError(CohkitError):
    """Kraus operators do not sum to the identity under K^dag K."""


class InvalidParamsError(CohkitError):
    """Model parameters outside their validity region."""


class InvalidNError(CohkitError):
    """Ensemble size n must be a positive integer."""


class IntegrationUnstableError(CohkitError):
    """Time integration drifted beyond the allowed trace tolerance."""


class DomainError(CohkitError):
    """Scalar argument outside its mathematical domain."""


class ParseError(CohkitError):
    """Input file could not be parsed; message carries line/field context."""
