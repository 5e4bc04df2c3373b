"""Typed errors for undefined or degenerate quantities.

Every error carries a stable ``kind`` string so callers (notably the CLI)
can report failures in a machine-parsable way without matching on class
names or message text.
"""


class PrevthreshError(Exception):
    """Base class for all library errors."""

    kind = "error"


class DegenerateDenominator(PrevthreshError):
    """A Bayes predictive-value denominator vanished; the curve has no value there."""

    kind = "degenerate-denominator"


class UndefinedMetric(PrevthreshError):
    """The metric's defining expression has no value for these inputs."""

    kind = "undefined-metric"


class DegenerateProfile(PrevthreshError):
    """The sensitivity/specificity pair degenerates the requested construction."""

    kind = "degenerate-profile"


class ZeroDenominator(PrevthreshError):
    """The reference value of a ratio is zero."""

    kind = "zero-denominator"


class ParseError(PrevthreshError):
    """Malformed input data. ``row`` is the 1-based file row (header is row 1)."""

    kind = "parse"

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class EmptyInput(PrevthreshError):
    """An input stream contained no data rows."""

    kind = "empty-input"


class UsageError(PrevthreshError):
    """Bad command-line usage."""

    kind = "usage"
