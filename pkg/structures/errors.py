"""
Exception hierarchy for the counting index.

Every error raised by the library derives from ISubError so callers can
catch the whole family at once; the CLI maps the subclasses to exit codes.
"""


class ISubError(Exception):
    """Base class for all index errors."""


# ==================== Host graph ====================

class GraphError(ISubError):
    """Invalid operation on the host graph."""


class DuplicateEdgeError(GraphError):
    pass


class MissingEdgeError(GraphError):
    pass


class UnknownVertexError(GraphError):
    pass


class LoopError(GraphError):
    pass


class InvalidColorError(GraphError):
    pass


class DuplicateVertexError(GraphError):
    pass


class VertexNotIsolatedError(GraphError):
    pass


# ==================== Orientation / augmentation ====================

class OrientationError(ISubError):
    """Invalid operation on a bounded orientation."""


class DuplicatePairError(OrientationError):
    pass


class MissingPairError(OrientationError):
    pass


class CapacityExceededError(OrientationError):
    """The in-degree cap could not be restored (graph left the declared class)."""

    def __init__(self, message: str, cap: int, flips: int):
        super().__init__(message)
        self.cap = cap
        self.flips = flips


class AugmentationError(ISubError):
    pass


# ==================== Patterns ====================

class PatternError(ISubError):
    """Malformed pattern or pattern outside the supported shape."""


class PatternGuardError(PatternError):
    pass


class BlowupGuardError(PatternError):
    pass


class NotElderError(PatternError):
    pass


class NotConnectedError(PatternError):
    pass


class ClanStructureError(PatternError):
    pass


# ==================== Engine / facade ====================

class EngineError(ISubError):
    pass


class EdgeNotInViewError(EngineError):
    pass


class UnknownPatternError(ISubError):
    pass


class OracleScaleError(ISubError):
    pass


class ScriptParseError(ISubError):
    """Text input rejected; line_number is 1-based."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
