"""Exception types shared across the package."""


class BotsigError(ValueError):
    """Base class for all argument/contract violations raised by botsig."""


class InvalidLength(BotsigError):
    """A bitstring argument has the wrong length for the operation."""


class EmptyInput(BotsigError):
    """An operation that needs at least one element received none."""


class PreconditionViolated(BotsigError):
    """A documented parameter constraint does not hold."""
