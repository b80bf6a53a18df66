"""Exception types.

Subclasses of ``ValueError`` signal bad input (the CLI maps them to exit
code 2); subclasses of ``RuntimeError`` signal a run that could not finish
(exit code 1).
"""


class SubcritError(Exception):
    """Base class for all errors raised by this package."""


class ZeroMeanDegreeError(SubcritError, ValueError):
    """nu or the size-biased law was requested for an all-zero sequence."""


class OddDegreeSumError(SubcritError, ValueError):
    """A degree sequence with odd sum cannot be paired."""


class SequenceFormatError(SubcritError, ValueError):
    """A degree, weight or edge file could not be parsed."""

    def __init__(self, message, lineno=None, path=None):
        self.lineno = lineno
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)


class DistributionError(SubcritError, ValueError):
    """Invalid degree distribution, weight law or model spec string."""


class ConfigError(SubcritError, ValueError):
    """Invalid experiment configuration."""


class ConditioningError(SubcritError, RuntimeError):
    """Rejection sampling for an even degree sum gave up."""


class TriesExhaustedError(SubcritError, RuntimeError):
    """Rejection sampling for a simple graph gave up."""

    def __init__(self, message, tries):
        self.tries = tries
        super().__init__(message)
