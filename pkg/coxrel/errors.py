"""
Exception hierarchy for coxrel

Validation errors also derive from ValueError so callers that only catch
ValueError keep working.
"""

from typing import Optional


class CoxrelError(Exception):
    """Base class for every error raised by coxrel"""


class ValidationError(CoxrelError, ValueError):
    """An input value violates a documented precondition"""


class NonSymmetricError(ValidationError):
    """Order table is not symmetric"""


class BadDiagonalError(ValidationError):
    """Diagonal entry different from 1"""


class BadOrderError(ValidationError):
    """Off-diagonal order below 2 (or not an integer / infinity)"""


class IndexOutOfRangeError(ValidationError, IndexError):
    """Generator index outside 0..n-1"""


class EmptySubsetError(ValidationError):
    """Operation needs a nonempty subset"""


class HypothesisFailedError(ValidationError):
    """A construction was called outside its hypothesis"""


class InvalidGraphError(ValidationError):
    """Graph has loops, repeated edges or endpoints out of range"""


class InvalidJoinSetError(ValidationError):
    """Pairs do not form a join of non-edges in the given graph"""


class ParseError(ValidationError):
    """Input document could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            location = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{location}: {message}"
        super().__init__(message)


class CapacityError(CoxrelError):
    """Instance exceeds an enumeration capacity bound"""


class TooLargeError(CapacityError, ValueError):
    """More generators (or corpus entries) than the enumeration cap allows"""


class TooManyCoresError(CapacityError):
    """Partition oracle refused an instance with too many maximal cores"""


class InternalInvariantError(CoxrelError):
    """A mathematical invariant the algorithms rely on was observed to fail"""
