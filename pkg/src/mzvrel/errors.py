"""Exception hierarchy shared by every module."""


class MZVError(Exception):
    """Base class for all errors raised by mzvrel."""


class ParseError(MZVError, ValueError):
    pass


class DepthMismatch(MZVError, ValueError):
    pass


class EmptyIndex(MZVError, ValueError):
    pass


class DepthTooSmall(MZVError, ValueError):
    pass


class NotAdmissible(MZVError, ValueError):
    """Raised when a divergent (non-admissible) index or word reaches an evaluator."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotPrime(MZVError, ValueError):
    pass


class InvalidParams(MZVError, ValueError):
    pass
