"""Exception types shared across the package."""


class TrachtenbergError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TrachtenbergError, ValueError):
    """Input text is not a valid nonnegative decimal number."""


class DomainError(TrachtenbergError, ValueError):
    """An argument is outside the domain an operation is defined on."""


class ConfigError(TrachtenbergError, ValueError):
    """A drill configuration violates its bounds."""


class ChallengeError(TrachtenbergError):
    """A response referenced a stale, unknown, or already-answered challenge."""


class ValidationError(TrachtenbergError, ValueError):
    """A submitted answer is malformed for the kind of question asked."""


class SessionNotFound(TrachtenbergError, KeyError):
    """No session with the given id exists in memory or in the store."""


class PersistenceError(TrachtenbergError):
    """A session log could not be read back.

    `line_number` is the 1-based offending line when known.
    """

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number
