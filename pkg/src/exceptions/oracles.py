class BaseOracleError(ValueError):
    """Base class for all errors raised by the classical oracles."""

    def __init__(self, message=None):
        if message is None:
            message = "An oracle error occurred."
        super().__init__(message)


class TruthTableError(BaseOracleError):
    """Raised when a truth table does not describe a total function."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"Invalid truth table field '{field}': {message}")


class CodomainError(BaseOracleError):
    """Raised when a table has the wrong codomain for a classifier."""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Expected codomain size {expected}, got {actual}")


class PromiseViolationError(BaseOracleError):
    """Raised when a function does not satisfy the promise of an algorithm."""

    def __init__(self, promise: str, detail: str = ""):
        self.promise = promise
        message = f"Function violates the {promise} promise"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
