"""Exception taxonomy shared across the package and mapped to CLI exit codes."""


class GradedPiError(Exception):
    """Base class for package errors."""


class SpecParseError(GradedPiError):
    """Malformed spec file, polynomial literal, or flag value (exit 2)."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = "line %s%s: %s" % (line, "" if column is None else ":%s" % column, message)
        super().__init__(message)
        self.line = line
        self.column = column


class PreconditionError(GradedPiError):
    """An operation's precondition was violated (exit 3)."""


class ResourceRefusal(GradedPiError):
    """A computation exceeded the configured size bound (exit 4)."""


class VerificationFailure(GradedPiError):
    """A membership or completeness check failed (exit 1)."""
