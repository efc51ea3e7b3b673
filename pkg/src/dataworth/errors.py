"""Error taxonomy shared by the library, CLI and service.

Two user-facing classes matter for exit-code mapping: InputError covers
invalid answers, weights or values (CLI exit 1), ParseFailure covers broken
or unreadable files (CLI exit 2). Anything else is an internal error.
"""


class DataworthError(Exception):
    """Base class for all package errors."""


class InputError(DataworthError):
    """Invalid value, answer, weight profile, or request."""


class ParseFailure(DataworthError):
    """A file could not be read or parsed; carries location context."""
