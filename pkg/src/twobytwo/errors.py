"""Exception types raised across the package."""


class TableError(ValueError):
    """Base class for invalid or unsupported table inputs."""


class NegativeCell(TableError):
    pass


class SumOutOfTolerance(TableError):
    pass


class DegenerateMarginal(TableError):
    """A marginal probability is 0 or 1, so some conditional is undefined."""


class EmptySpace(TableError):
    pass


class ZeroCell(TableError):
    """The operation needs every cell strictly positive."""


class Indeterminate(TableError):
    """A ratio or log measure evaluates to 0/0."""


# classify() is documented as raising IndeterminateInput; same condition.
IndeterminateInput = Indeterminate


class OutOfRange(TableError):
    """Coupling parameter outside the admissible interval."""


class EmptyConditioningClass(TableError):
    pass


class NotExact(TableError):
    """An exact-arithmetic routine was handed a float table."""


class IngestError(ValueError):
    """Problem reading paired binary observations from a delimited file."""


class MalformedRow(IngestError):
    def __init__(self, line: int, token: str):
        self.line = line
        self.token = token
        super().__init__(f"line {line}: malformed token {token!r} (expected '0' or '1')")


class MissingColumn(IngestError):
    pass


class EmptyFile(IngestError):
    pass
