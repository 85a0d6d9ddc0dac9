"""Exception types raised across qmetrics."""


class QMetricsError(Exception):
    """Base class for all qmetrics errors."""


class NotHermitian(QMetricsError, ValueError):
    pass


class NoConvergence(QMetricsError, RuntimeError):
    pass


class DimensionMismatch(QMetricsError, ValueError):
    pass


class NotNormalized(QMetricsError, ValueError):
    pass


class NotOrthonormal(QMetricsError, ValueError):
    pass


class NonRealResult(QMetricsError, ValueError):
    pass


class ConsistencyFailure(QMetricsError, RuntimeError):
    """Independent computations of the same quantity disagree (a numerical bug)."""


class DegenerateConfiguration(QMetricsError, ValueError):
    pass


class StepUnderflow(QMetricsError, ValueError):
    pass


class InvalidSpin(QMetricsError, ValueError):
    pass


class NoCrossing(QMetricsError, RuntimeError):
    pass


class DegenerateLikelihood(QMetricsError, ValueError):
    pass


class ZeroInformation(QMetricsError, ValueError):
    pass
