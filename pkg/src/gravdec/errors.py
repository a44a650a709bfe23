"""Exception types shared across the package.

Two failure families are distinguished because the command line maps them
to different exit codes: bad input (exit 2) versus a numerical guard that
stopped a computation whose result could not be trusted (exit 3).
"""


class ValidationError(ValueError):
    """Input rejected before any computation ran."""


class EnumerationLimitError(ValidationError):
    """A mode enumeration would materialize more modes than the configured
    limit allows; use the continuum counting path instead."""


class TruncationLeakageError(RuntimeError):
    """Population leaked into the top levels of a truncated number basis,
    so the dense evolution is no longer faithful."""
