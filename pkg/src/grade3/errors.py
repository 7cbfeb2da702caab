"""Exception types shared across the package.

Every error raised by the public API derives from :class:`Grade3Error`, so
callers can catch one base class.  All of them also derive from
:class:`ValueError`: they signal bad arguments or bad input documents, never
internal failures.
"""

from __future__ import annotations

__all__ = [
    "Grade3Error",
    "InvalidFormat",
    "InvalidLabel",
    "DimensionMismatch",
    "UnknownArrangement",
    "UnsupportedProfile",
    "PreconditionViolated",
    "UnsupportedSpec",
    "Phi2Mismatch",
    "OutOfDomain",
    "DocumentError",
]


class Grade3Error(ValueError):
    """Base class for all errors raised by this package."""


class InvalidFormat(Grade3Error):
    """A format (m, n) has non-positive or non-integer coordinates."""


class InvalidLabel(Grade3Error):
    """A class label is malformed or has out-of-range parameters."""


class DimensionMismatch(Grade3Error):
    """A multiplication table does not fit the requested format."""


class UnknownArrangement(Grade3Error):
    """An arrangement id is unknown or incompatible with the class."""


class UnsupportedProfile(Grade3Error):
    """A rank profile is outside the supported table."""


class PreconditionViolated(Grade3Error):
    """A linkage rule was applied to an input outside its hypotheses."""


class UnsupportedSpec(Grade3Error):
    """A link specification is outside the supported cases."""


class Phi2Mismatch(Grade3Error):
    """The unit-product hypothesis (e1*e2 = f1) fails for the given table."""


class OutOfDomain(Grade3Error):
    """A query lies outside the domain a function is defined on."""


class DocumentError(Grade3Error):
    """A JSON document does not match the expected schema."""
