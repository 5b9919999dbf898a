"""Exception hierarchy shared by every module."""


class HeiskitError(Exception):
    """Base class for all errors raised by heiskit."""


class InputError(HeiskitError, ValueError):
    """Malformed or incompatible input (shape, parent, constraint violations)."""


class ParentMismatch(InputError):
    pass


class NotSeparated(InputError):
    """A Heisenberg construction was given a bilinear map that is not separated."""


class NotClassTwo(InputError):
    pass


class NotSymplectic(InputError):
    pass


class BoundExceeded(HeiskitError):
    """An exhaustive operation would enumerate more elements than the configured bound."""

    def __init__(self, size, bound, what="enumeration"):
        self.size = size
        self.bound = bound
        super().__init__(f"{what} of size {size} exceeds bound {bound}")


class ConsistencyError(HeiskitError, AssertionError):
    """A post-verification step failed.  Unreachable for valid inputs."""
