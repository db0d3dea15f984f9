"""Exception hierarchy shared across the package."""


class ExtropyError(Exception):
    """Base class for all package errors."""


class InvalidModel(ExtropyError):
    """A distribution model violates its invariants (e.g. negative density)."""


class InvalidParameter(ExtropyError, ValueError):
    """A parameter lies outside its family's valid domain."""


class QuadratureFailure(ExtropyError):
    """An integral could not be brought within tolerance."""


class DenominatorUnderflow(ExtropyError):
    """A conditional measure was requested where its denominator is below the floor."""


class DegenerateSample(ExtropyError):
    """A sample has zero spread (or is otherwise unusable for estimation)."""


class NoBracket(ExtropyError):
    """The bandwidth equation has no sign change inside the search bracket."""


class InsufficientGrid(ExtropyError):
    """A grid-based check was called with too few points."""


class MissingColumn(ExtropyError):
    """A requested CSV column is absent from the header."""


class CsvParseError(ExtropyError):
    """A CSV cell failed to parse as a finite real."""

    def __init__(self, row: int, column: str, cell: str):
        super().__init__(f"row {row}, column {column!r}: cannot parse {cell!r} as a finite real")
        self.row = row
        self.column = column


class TooFewObservations(ExtropyError):
    """A group has fewer observations than the minimum required."""

    def __init__(self, group: str, count: int, minimum: int):
        super().__init__(f"group {group!r} has {count} observations, minimum is {minimum}")
        self.group = group
        self.count = count
