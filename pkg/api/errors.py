"""Exceptions raised by the library.

Every exception carries the process exit code the CLI uses when it is not caught.
"""


class SharingError(ValueError):
    """Base class for all errors raised by this package."""
    exit_code = 1


class ParseError(SharingError):
    """Raised when some text cannot be parsed."""
    exit_code = 2

    def __init__(self, message: str, column: int = None):
        """Create a parse error.

        :param message: The error message.
        :param column: The 0-based column where the error was detected, if known.
        """
        super().__init__(message if column is None else f'{message} at col {column}')
        self.column = column


class SemanticError(SharingError):
    """Raised when well-formed input is meaningless (unknown variable, incompatible operands, …)."""
    exit_code = 3


class DuplicateName(SemanticError):
    pass


class UnknownVariable(SemanticError):
    pass


class UniverseMismatch(SemanticError):
    pass


class SelfBinding(SemanticError):
    pass


class DuplicateBinding(SemanticError):
    pass


class NotASubdomain(SemanticError):
    """Raised when complementing a domain image that is not contained in the reference image."""
    pass


class PreconditionFailed(SemanticError):
    pass


class CapExceeded(SharingError):
    """Raised when a computation would exceed a size cap."""
    exit_code = 4


class InternalError(SharingError):
    """Raised when a computation contradicts a proved result."""
    exit_code = 1
