"""Error taxonomy shared across the package.

The CLI maps these onto exit codes: InconsistencyError -> 1,
PreconditionError -> 2, WindowError -> 3.
"""


class WhcalcError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(WhcalcError, ValueError):
    """A documented precondition of an operation was violated."""


class UnverifiedError(PreconditionError):
    """A fact was requested beyond the range the package will certify."""


class WindowError(WhcalcError, ValueError):
    """A degree lies outside the validity window of a formula or chart."""


class InconsistencyError(WhcalcError, RuntimeError):
    """Two internal routes that must agree did not; indicates a bug."""
