"""Exception hierarchy shared by all chromoid modules."""

from __future__ import annotations


class ChromoidError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(ChromoidError):
    """Malformed input: dangling references, out-of-range indices, bad ids."""


class ResourceLimitError(ChromoidError):
    """A size guard was exceeded; the request was refused, not attempted."""


class PreconditionError(ChromoidError):
    """An operation was refused because a required check failed.

    Carries the failing ValidationReport(s) so callers can surface witnesses.
    """

    def __init__(self, message, reports=()):
        super().__init__(message)
        self.reports = tuple(reports)


class InvariantViolation(ChromoidError):
    """An internal invariant that should hold on valid input was violated.

    Signals either corrupted input or a bug; never expected in normal use.
    """


class SerializationError(ChromoidError):
    """A file could not be parsed or failed semantic validation on load."""
