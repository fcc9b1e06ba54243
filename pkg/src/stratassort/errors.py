"""Exception hierarchy.

The CLI maps ``DataError`` to exit status 3 and ``DegenerateError`` to 4.
"""


class StratError(Exception):
    """Base class for all package errors."""


class DataError(StratError, ValueError):
    """Input data is malformed or inconsistent."""


class ParseError(DataError):
    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{self.path}:{line}: {message}")


class OutOfRangeError(DataError):
    """A score lies outside every interval of a partition."""


class InfeasibleSplitError(DataError):
    """More classes requested than there are distinct scores."""


class DegenerateError(StratError, ArithmeticError):
    """A metric is undefined for this input (0/0 normalisation, no edges, ...)."""
