"""Exception hierarchy shared by every module."""


class MinorLabError(Exception):
    pass


class InvalidArgumentError(MinorLabError, ValueError):
    pass


class DegenerateInputError(InvalidArgumentError):
    pass


class PreconditionError(MinorLabError, ValueError):
    """A documented precondition does not hold; ``deficit`` says by how much."""

    def __init__(self, message, deficit=None):
        super().__init__(message)
        self.deficit = deficit


class MinDegreeError(PreconditionError):
    pass


class AverageDegreeError(PreconditionError):
    pass


class HypothesisViolation(PreconditionError):
    """A theorem hypothesis fails; ``inequality`` quotes the failed check."""

    def __init__(self, message, inequality=None):
        super().__init__(message)
        self.inequality = inequality


class OutOfRegimeError(PreconditionError):
    pass


class HostTooLargeError(InvalidArgumentError):
    pass


class FormatError(MinorLabError, ValueError):
    """Malformed graph input; carries the line or byte position."""

    def __init__(self, message, line=None, offset=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.offset = offset


class InternalError(MinorLabError, AssertionError):
    """An invariant that a correct argument guarantees was violated."""
