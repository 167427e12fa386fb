"""Exception hierarchy shared across the package."""


class Icym2iError(Exception):
    """Base class for all package-specific errors."""


class DataError(Icym2iError):
    """Malformed dataset, joint table, or generator arguments."""


class PositivityError(DataError):
    """A missingness spec implies observation probabilities below the floor."""


class DegenerateMechanismError(DataError):
    """Missingness indicator is constant; no mechanism can be estimated."""


class SchemaMismatchError(Icym2iError):
    """Covariate or input columns do not match what a model was fit on."""


class UndefinedMetricError(Icym2iError):
    """Metric is undefined for the given inputs (e.g. single-class AUROC)."""


class NonFiniteLossError(Icym2iError):
    """Training loss became non-finite (typically exploding weights)."""


class SolverError(Icym2iError):
    """Numerical failure inside an optimization loop."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state or {}


class ComparisonError(Icym2iError):
    """Report/reference schema mismatch during comparison."""
