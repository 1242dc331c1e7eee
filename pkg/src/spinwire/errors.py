"""Exception hierarchy with stable machine-readable codes.

The `code` attribute is what the CLI puts into its JSON error records, so
it must stay stable even if messages are reworded.
"""


class SpinWireError(Exception):
    code = "error"


class InvalidParamsError(SpinWireError):
    code = "invalid-params"


class SingularCouplingError(SpinWireError):
    code = "singular-coupling"


class RegimeError(SpinWireError):
    code = "regime"


class PoleEvaluationError(SpinWireError):
    code = "pole-evaluation"


class RootCountError(SpinWireError):
    code = "root-count-mismatch"


class NormalizationError(SpinWireError):
    code = "normalization-failure"


class ConvergenceError(SpinWireError):
    code = "convergence-failure"


class DimensionMismatchError(SpinWireError):
    code = "dimension-mismatch"


class DomainError(SpinWireError):
    code = "domain-error"


class NoPositiveEigenvalueError(SpinWireError):
    code = "no-positive-eigenvalue"


class NotApplicableError(SpinWireError):
    code = "not-applicable"


class NoTransferError(SpinWireError):
    code = "no-transfer"


class InsufficientPointsError(SpinWireError):
    code = "insufficient-points"


class DegenerateFitError(SpinWireError):
    code = "degenerate-fit"


class UnknownFigureError(SpinWireError):
    code = "unknown-figure"


class ConfigError(SpinWireError):
    code = "config-parse"
