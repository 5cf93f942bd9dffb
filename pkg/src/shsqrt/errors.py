"""Exception hierarchy.

Every class carries the process exit code the command-line front end
reports for it, so library callers and the CLI agree on one mapping.
"""


class ShsqrtError(Exception):
    exit_code = 1


class ConfigError(ShsqrtError, ValueError):
    exit_code = 2


class TooManyBranches(ConfigError):
    """More eigenvalue groups than the enumeration cap allows."""


class ParseError(ShsqrtError, ValueError):
    exit_code = 3

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


class ShapeError(ConfigError):
    """Operand dimensions do not fit the operation."""


class StructureError(ShsqrtError, ValueError):
    exit_code = 4


class NegativeRealEigenvalue(ShsqrtError, ArithmeticError):
    """The matrix has a real negative eigenvalue, so no real root is a function of it."""

    exit_code = 5


class SingularMatrix(ShsqrtError, ArithmeticError):
    exit_code = 6


class ConvergenceError(ShsqrtError, ArithmeticError):
    exit_code = 7


class FileError(ShsqrtError, OSError):
    exit_code = 8


class SylvesterSingular(ShsqrtError, ArithmeticError):
    """A small Sylvester block system is numerically singular."""

    exit_code = 9


class InconsistentSystem(ShsqrtError, ArithmeticError):
    exit_code = 10
