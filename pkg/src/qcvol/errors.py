class QcvolError(Exception):
    pass


class DomainError(QcvolError, ValueError):
    """Argument outside the domain of a formula or estimator."""


class DegenerateMinorError(QcvolError, ArithmeticError):
    """Leading (n-1)x(n-1) block is numerically singular."""


class RangeViolationError(QcvolError, ValueError):
    """Image of a Bloch vector left the unit ball: the map is not completely positive."""


class DegenerateStageError(QcvolError, ArithmeticError):
    """A conditional stage of the sequential sampler has empty support."""


class SampleTooSmallError(QcvolError, ValueError):
    pass
