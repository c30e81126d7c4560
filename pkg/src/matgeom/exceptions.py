"""Exception hierarchy shared by every module."""


class MatgeomError(ValueError):
    """Base class for precondition violations."""


class ShapeError(MatgeomError):
    pass


class FieldMismatchError(MatgeomError):
    pass


class SingularMatrixError(MatgeomError):
    pass


class NotSelfAdjointError(MatgeomError):
    pass


class NotPositiveDefiniteError(MatgeomError):
    pass


class NotNormalError(MatgeomError):
    pass


class NotUnitaryError(MatgeomError):
    pass


class NotOrthonormalError(MatgeomError):
    pass


class NoRealAntisymmetricLog(MatgeomError):
    """Raised for orthogonal matrices with determinant -1."""


class UnsupportedError(MatgeomError):
    """The input lies outside the implemented decision procedure."""


class InadmissibleDirectionError(MatgeomError):
    pass


class NotInChartError(MatgeomError):
    pass


class ResultantZeroError(MatgeomError):
    pass


class OffManifoldError(MatgeomError):
    pass


class TrustRegionError(MatgeomError):
    """A lifted path left the region where the lift is reliable."""


class ConvergenceError(ArithmeticError):
    """An iteration hit its cap.

    ``bracket`` holds an interval known to contain the answer, when one
    is available.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class DocumentError(MatgeomError):
    """Malformed matrix document; ``line``/``column`` are 1-based."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
