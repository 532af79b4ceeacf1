"""Exception hierarchy shared by every module."""


class MatrixGeomError(Exception):
    """Base class for all errors raised by matrixgeom."""


class DimensionError(MatrixGeomError, ValueError):
    """Operand shapes are incompatible with the operation."""


class ContractError(MatrixGeomError, ValueError):
    """An input violates a precondition (non-finite, not symmetric, off the sphere, ...)."""


class ConvergenceError(MatrixGeomError, ArithmeticError):
    """An iterative kernel hit its sweep cap before converging."""


class SingularInputError(MatrixGeomError, ValueError):
    """The operation needs linearly independent columns."""


class RankError(MatrixGeomError, ValueError):
    """The input has lower rank than the operation requires."""


class NotPSDError(MatrixGeomError, ValueError):
    """A matrix expected to be positive semi-definite has a clearly negative eigenvalue."""


class DegenerateInputError(MatrixGeomError, ValueError):
    """A point set collapses to a single point so no scale or direction is defined."""


class CsvParseError(MatrixGeomError, ValueError):
    """A CSV file could not be parsed; carries the file name and 1-based line number."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)
