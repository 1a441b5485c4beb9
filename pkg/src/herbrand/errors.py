"""Exception types shared by every module.

Each error carries a short machine-readable ``code`` (``NOT_SQUAREFREE``,
``ORDER_VIOLATION``, ...) which the command-line front end prints verbatim.
"""

from __future__ import annotations


class HerbrandError(ValueError):
    """Base class for invalid-input errors raised by the library."""

    code = "INVALID_INPUT"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self) -> str:
        return f"{self.code}: {self.args[0]}"


class NotSublatticeError(HerbrandError):
    code = "NOT_SUBLATTICE"


class ModuleValidationError(HerbrandError):
    """Raised when a matrix does not define a G-module on its presentation."""

    def __init__(self, message: str, code: str, generator: int | None = None,
                 witness: tuple[int, ...] | None = None):
        super().__init__(message, code)
        self.generator = generator
        self.witness = witness


class OracleError(HerbrandError):
    code = "BOUND_EXCEEDED"


class ParseError(HerbrandError):
    code = "PARSE_ERROR"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
