"""Exception hierarchy shared across the package."""


class AmprobError(Exception):
    """Base class for all package errors."""


class UsageError(AmprobError, ValueError):
    """The caller violated an API precondition (bad arguments)."""


class DomainError(AmprobError, ValueError):
    """The inputs are syntactically fine but mathematically inadmissible
    (non-finite values, null total amplitude, zero-probability collapse)."""


class InvariantError(AmprobError, RuntimeError):
    """An internal cross-check failed; indicates a bug, not user error."""


class ConfigError(UsageError):
    """Configuration parse or validation failure, with location info."""

    def __init__(self, message: str, key: str | None = None,
                 line: int | None = None):
        self.key = key
        self.line = line
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if key is not None:
            prefix += f"key '{key}': "
        super().__init__(prefix + message)
