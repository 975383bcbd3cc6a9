"""Exception hierarchy shared by all solver modules."""


class DivClustError(Exception):
    """Base class for every error raised by divclust."""


class IndexOutOfRange(DivClustError, IndexError):
    pass


class EmptySolution(DivClustError, ValueError):
    pass


class DegenerateMetric(DivClustError, ValueError):
    pass


class MetricViolation(DivClustError, ValueError):
    """Distance matrix is not a metric; ``witness`` holds the offending indices."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class SchemaError(DivClustError, ValueError):
    """Instance data violates the model invariants; ``field`` names the culprit."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ParseError(DivClustError, ValueError):
    pass


class BadParameter(DivClustError, ValueError):
    pass


class Infeasible(DivClustError):
    """No facility set of size k meets the group requirements."""


class CapExceeded(DivClustError):
    pass


class EmptyCandidate(DivClustError, ValueError):
    pass


class EmptyBlock(DivClustError, ValueError):
    pass


class EmptyPart(DivClustError, KeyError):
    pass


class NotDisjoint(DivClustError, ValueError):
    pass


class RequirementSumMismatch(DivClustError, ValueError):
    pass
