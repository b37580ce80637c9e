"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter is outside the range an operation supports."""


class GenerationError(RuntimeError):
    """A randomized construction gave up after exhausting its retry cap."""

    def __init__(self, message, attempts=0):
        super().__init__(message)
        self.attempts = attempts


class DecodeFailure(Exception):
    """Decoding could not produce a trustworthy answer."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason
