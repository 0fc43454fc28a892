"""Exception types raised across the package."""


class KleeneError(Exception):
    """Base class; `line` is filled in by the file parser when known."""

    line: int | None = None

    def __init__(self, message: str = "", line: int | None = None):
        self.line = line
        super().__init__(message)

    def __str__(self):
        msg = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {msg}"
        return msg


class DuplicateLabel(KleeneError):
    pass


class UnknownElement(KleeneError, KeyError):
    def __str__(self):
        return KleeneError.__str__(self)


UnknownLabel = UnknownElement


class AntisymmetryViolation(KleeneError):
    pass


class EmptySubset(KleeneError):
    pass


class SizeLimit(KleeneError):
    pass


class NotComparable(KleeneError):
    pass


class NotInvolutive(KleeneError):
    pass


class NotAntitone(KleeneError):
    def __init__(self, message: str = "", pair: tuple[str, str] | None = None, line: int | None = None):
        self.pair = pair
        super().__init__(message, line)


class NotBounded(KleeneError):
    pass


class NoUniqueTop(KleeneError):
    pass


class NoUniqueBottom(KleeneError):
    pass


class NotOrderPreserving(KleeneError):
    pass


class HypothesisFailed(KleeneError):
    def __init__(self, message: str = "", element: str | None = None):
        self.element = element
        super().__init__(message)


class NotDistributive(KleeneError):
    pass


class NotOrtho(KleeneError):
    pass


class PreconditionFailed(KleeneError):
    def __init__(self, message: str = "", clause: str | None = None):
        self.clause = clause
        super().__init__(message)


class NotChain(KleeneError):
    pass


class GapConditionFailed(KleeneError):
    pass


class NotKleene(KleeneError):
    pass


class EvenCardinality(KleeneError):
    pass


class NoFixedPoint(KleeneError):
    pass


class BadLength(KleeneError):
    pass


class VerificationFailed(KleeneError):
    """A constructed object failed one of its own post-condition checks."""


class ParseError(KleeneError):
    pass
