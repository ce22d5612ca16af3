"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`FisherDistError`. Argument errors also derive from ``ValueError`` so
callers that only know the builtin still catch them.
"""


class FisherDistError(Exception):
    """Base class for library errors."""


class InvalidArgumentError(FisherDistError, ValueError):
    """An argument violates a documented precondition."""


class InvalidStateError(FisherDistError, ValueError):
    """An object no longer satisfies its invariant (e.g. lost normalization)."""


class DegenerateInputError(FisherDistError, ValueError):
    """Input carries no usable mass or information (e.g. all-zero samples)."""


class DomainCoverageError(FisherDistError):
    """The grid truncates more probability mass than allowed."""


class SupportError(FisherDistError):
    """Reference density vanishes where the other density does not."""


class InsufficientDataError(FisherDistError):
    """Too few ladder points to fit a coefficient."""


class DegenerateFitError(FisherDistError):
    """No strictly positive values to fit."""

