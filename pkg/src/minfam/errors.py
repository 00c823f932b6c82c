"""Exception hierarchy shared across the package.

Every user-facing error carries a stable machine-readable ``code`` so the
command line tool can emit it on the last line of stderr.
"""

from __future__ import annotations


class MinfamError(Exception):
    """Base class for all errors raised by this package."""

    exit_status = 2

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class DescriptorError(MinfamError):
    """The input descriptor is malformed or violates a validation rule."""

    exit_status = 1


class ClassificationError(MinfamError):
    """The pipeline could not classify the (valid-looking) input."""

    exit_status = 2
