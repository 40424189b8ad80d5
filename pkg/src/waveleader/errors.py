"""Exception hierarchy shared by all analysis modules.

The CLI maps these onto exit codes: configuration problems exit 2, data
problems exit 3, numeric degeneracies exit 4.
"""


class AnalysisError(Exception):
    """Base class for all waveleader errors."""


class InvalidArgumentError(AnalysisError, ValueError):
    """A parameter is outside its documented domain."""


class InvalidDataError(AnalysisError, ValueError):
    """Input data violates a precondition (non-finite samples, bad file, ...)."""


class InsufficientScalesError(AnalysisError):
    """Fewer usable scales than a regression needs."""


class InsufficientDataError(AnalysisError):
    """Not enough atoms/boxes/blocks for the requested statistic."""


class DegenerateLeaderError(AnalysisError):
    """A leader needed in log-scale statistics is exactly zero."""


class DegenerateInputError(AnalysisError):
    """Every scale was dropped; nothing left to estimate."""


class NoRootError(AnalysisError):
    """Root bracketing failed (no sign change on the sampled grid)."""


class IncompleteReportError(AnalysisError):
    """A verdict was requested but its input quantity was never estimated."""


class InternalError(AnalysisError):
    """An invariant the implementation relies on was violated."""
