"""Exception hierarchy shared across the library and the CLI."""


class RingStarError(Exception):
    """Base class for all library errors."""


class InvalidParameter(RingStarError):
    """A constructor or operation argument violates its precondition."""


class SizeLimitExceeded(RingStarError):
    """A carrier or enumeration would exceed the configured bound."""

    def __init__(self, message: str, bound: int):
        super().__init__(f"{message} (bound: {bound})")
        self.bound = bound


class MixedRings(RingStarError):
    """Two elements from different rings were combined."""


class NotAnIdeal(RingStarError):
    """The given element set is not a two-sided ideal."""


class MissingCover(RingStarError):
    """An element required to possess a central cover has none."""


class PreconditionFailed(RingStarError):
    """A ring-level hypothesis required by the operation does not hold."""


class UnsupportedScalars(RingStarError):
    """No compatible prime-field scalar action exists for the ring."""


class UnknownTheorem(RingStarError):
    """The requested id is not in the theorem registry."""


class SubjectMismatch(RingStarError):
    """A ring-level check was given an action subject, or vice versa."""


class ParseError(RingStarError):
    """Source text of the ring DSL or an element literal is malformed."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        detail = f"{line}:{column}: {message}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)
        self.line = line
        self.column = column
        self.expected = expected
