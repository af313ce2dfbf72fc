"""Exception taxonomy shared by the whole package.

The CLI maps these onto its exit-code contract: configuration and IO
problems exit 2, runtime/verdict failures exit 1.
"""


class LognlsError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(LognlsError):
    """Invalid configuration, CLI usage, or input file.

    Carries an optional 1-based line number when the problem is tied to a
    specific line of a config file.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(LognlsError):
    """An operation was called outside its mathematical domain."""


class BoxTooSmallError(ConfigError):
    """The spatial box clips a profile that must decay at the boundary."""

    def __init__(self, message: str):
        super().__init__(message)


class BlowupError(LognlsError):
    """Non-finite values appeared during time integration."""

    def __init__(self, step: int):
        self.step = step
        super().__init__(f"non-finite values detected at step {step}")


class IterationError(LognlsError):
    """An iterative solver failed to converge within its budget."""
