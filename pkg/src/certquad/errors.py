"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ParseError(ValueError):
    """Expression text could not be parsed.

    Carries the byte offset of the offending token in ``offset``.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class Refusal(RuntimeError):
    """A bound engine declined to produce a certificate.

    Raised when a hypothesis cannot be established (convexity probe failed,
    exponent out of the engine's range) or when exact-mode output was
    requested but the result is not exactly representable.
    """


class OracleError(RuntimeError):
    """The reference integrator failed to converge.

    ``best`` holds the last estimate before giving up.
    """

    def __init__(self, message: str, best: float):
        super().__init__(message)
        self.best = best
