"""Exception types shared across the package."""


class TreePackError(Exception):
    """Base class for every error raised by treepack."""


class ParseError(TreePackError, ValueError):
    """Malformed input text. Carries a 1-based line and column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DimensionError(TreePackError, ValueError):
    pass


class HypothesisError(TreePackError):
    """The instance does not satisfy a builder's hypotheses."""


class CommonLeavesError(HypothesisError):
    pass


class AllPathsError(HypothesisError):
    """Every row is a path sequence; no reduction exists."""


class TooFewNeverLeavesError(HypothesisError):
    pass


class NotFoundError(TreePackError):
    """A search whose success is guaranteed by theory came back empty.

    Seeing this means a bug or a violated precondition.
    """


class NoFixtureError(NotFoundError):
    pass


class OracleTimeout(TreePackError):
    """The exhaustive search ran out of its node budget."""
