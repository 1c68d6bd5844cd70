"""Exception taxonomy.

Two families matter to callers: ``DataError`` (bad or inconsistent input,
CLI exit code 2) and ``SolverError`` (numerical failure, CLI exit code 3).
"""


class BiasgraphError(Exception):
    """Base class for every error raised by this package."""


class DataError(BiasgraphError):
    """Malformed, missing, or inconsistent input data."""


class EmptyDomain(DataError):
    """Nothing remains of a domain string after stripping."""


class MalformedDomain(DataError):
    """Stripped domain string is not a plausible registrable domain."""


class NoEdges(DataError):
    """Every edge record was dropped; a graph needs at least one edge."""


class UnknownSource(DataError):
    """A requested source is not a node of the graph."""


class ParseError(DataError):
    """A file could not be parsed; carries the offending location."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
        if line is not None:
            prefix += f"{line}:"
        super().__init__(f"{prefix} {message}" if prefix else message)


class UnknownLabel(DataError):
    """A label string outside the raw vocabulary for the task."""


class DuplicateDomain(DataError):
    """One domain mapped to two different labels for the same task."""


class LengthMismatch(DataError):
    """Prediction and gold sequences differ in length."""


class EmptyInput(DataError):
    """A metric or baseline was given an empty sequence."""


class EmptyDevSet(DataError):
    """Threshold fitting or grid search needs a non-empty dev set."""


class TooFewSamples(DataError):
    """A stratification class has fewer members than folds."""


class MissingScore(DataError):
    """A graph node has no entry in the supplied score table."""


class TooLarge(DataError):
    """Input exceeds the size guard of the dense linear-solve oracle."""


class SolverError(BiasgraphError):
    """Numerical failure inside a propagation solver."""


class Diverged(SolverError):
    """Iterate magnitude crossed the divergence ceiling."""


class NonFinite(SolverError):
    """A score became NaN or infinite."""


class Singular(SolverError):
    """The dense oracle's system matrix is numerically singular."""
