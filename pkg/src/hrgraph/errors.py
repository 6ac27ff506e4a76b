class KGraphError(ValueError):
    """Base class; `line` is set when the error can be tied to input text."""

    def __init__(self, message="", line=None):
        super().__init__(message)
        self.line = line

    def __str__(self):
        msg = super().__str__()
        name = type(self).__name__
        if self.line is not None:
            return f"line {self.line}: {name}: {msg}"
        return f"{name}: {msg}"


class ParseError(KGraphError):
    pass


class RankMismatch(KGraphError):
    pass


class MalformedSkeleton(KGraphError):
    pass


class InvalidColor(KGraphError):
    pass


class MissingSquare(KGraphError):
    pass


class DuplicateSquare(KGraphError):
    pass


class NonBijectiveSquares(KGraphError):
    pass


class CubeConditionFailure(KGraphError):
    pass


class NotComposable(KGraphError):
    pass


class DegreeOutOfRange(KGraphError):
    pass


class RangeMismatch(KGraphError):
    pass


class NotInSlice(KGraphError):
    pass


class NotContained(KGraphError):
    pass


class DegreeTooSmall(KGraphError):
    pass


class SliceMismatch(KGraphError):
    pass


class DegreeOrder(KGraphError):
    pass


class NotExhaustive(KGraphError):
    pass


class RegularityRequired(KGraphError):
    pass


class InsufficientDegree(KGraphError):
    pass


class SourcePresent(KGraphError):
    pass
