"""Exception hierarchy for spiderlink."""


class SpiderError(ValueError):
    """Base class for all input and analysis errors raised by spiderlink."""


class InputError(SpiderError):
    """Malformed mechanism document (missing or unknown fields, bad types)."""


class DuplicateFeet(SpiderError):
    pass


class LegTooShort(SpiderError):
    pass


class NonpositiveLength(SpiderError):
    pass


class DegenerateAlignment(SpiderError):
    """An aligned configuration whose body sits on its own foot (radius 0)."""


class GenericityViolation(SpiderError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NonGeneric(SpiderError):
    """Polygon space with an aligned configuration (singular)."""


class EmptySpace(SpiderError):
    pass


class TooManyEdges(SpiderError):
    pass


class EmptyWorkspace(SpiderError):
    pass


class OutsideWorkspace(SpiderError):
    pass


class UnsupportedFibers(SpiderError):
    """Fiber over a discriminant stratum is a singular polygon space we cannot classify."""


class MissingBetti(SpiderError):
    pass


class ZeroTotalWeight(SpiderError):
    pass


class FourCocircular(SpiderError):
    pass


class DegenerateCone(SpiderError):
    pass


class NotVoronoiGeneric(SpiderError):
    def __init__(self, clause, message):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


class OffsetTooLarge(SpiderError):
    pass


class NonIsolatedRemaining(SpiderError):
    pass


class SamplingExhausted(SpiderError):
    pass
