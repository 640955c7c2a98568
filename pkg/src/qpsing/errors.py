"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: parse/input problems exit with 1,
mathematical refusals (truncated certificates, unsupported preconditions,
caps) exit with 2.
"""


class QpsingError(Exception):
    pass


class ParseError(QpsingError):
    """Syntax or load-time error, with 1-based source position."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.col = col


class InputError(QpsingError):
    pass


class TruncationMismatch(QpsingError):
    pass


class InvertibilityError(QpsingError):
    pass


class ExactnessError(QpsingError):
    """Raised when an operation needs an exact certificate but got a truncated one."""


class UnsupportedError(QpsingError):
    """Raised for inputs outside an operation's stated domain."""


class BasisOverflowError(QpsingError):
    pass
