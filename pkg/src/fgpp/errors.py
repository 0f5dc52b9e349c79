"""Exception types shared across the package."""


class FgppError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FgppError, ValueError):
    """Malformed or out-of-range input."""


class ParseError(InputError):
    """Graph text that does not follow the edge-list format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(FgppError, RuntimeError):
    """A computation would exceed the configured work cap."""


class ContractError(FgppError, AssertionError):
    """An internal precondition was violated, usually a dispatch bug."""


class WitnessError(ContractError):
    """A returned witness failed re-verification."""
