"""Exception hierarchy.

Every error raised by the library derives from :class:`InfoError`, which
is itself a ``ValueError`` so callers that only care about bad input can
catch the builtin.
"""


class InfoError(ValueError):
    """Base class for all library errors."""


# distributions
class NegativeMassError(InfoError):
    pass


class NotNormalizedError(InfoError):
    pass


class DuplicateLabelError(InfoError):
    pass


class LengthMismatchError(InfoError):
    pass


class IndexOutOfRangeError(InfoError):
    pass


class ProductTooLargeError(InfoError):
    pass


class SpaceMismatchError(InfoError):
    """Two distributions are not defined over the same label list."""


# measures
class NotFullySupportedError(InfoError):
    pass


class InconsistentReportError(InfoError):
    """An internal cross-check between two computation paths failed."""


# regimes
class POutOfRangeError(InfoError):
    pass


class QOutOfRangeError(InfoError):
    pass


class TargetTooLargeError(InfoError):
    pass


# markov
class GraphError(InfoError):
    pass


class NotRegularError(GraphError):
    pass


class NotConnectedError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


# finetune
class ParamOutOfBoundsError(InfoError):
    pass


class DegenerateScaleError(InfoError):
    pass


class EmptyTargetError(InfoError):
    pass


class DeltaOutOfRangeError(InfoError):
    pass


# file parsing
class ParseError(InfoError):
    """A JSON input file is malformed; ``field`` names the offending key."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
