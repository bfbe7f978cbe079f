class BaseSimulationError(ValueError):
    """Base class for all errors raised by the statevector simulator."""

    def __init__(self, message=None):
        if message is None:
            message = "A simulation error occurred."
        super().__init__(message)


class RegisterLabelError(BaseSimulationError):
    """Raised when a basis label does not fit its register."""

    def __init__(self, register_index: int, label: int, dimension: int):
        self.register_index = register_index
        self.label = label
        self.dimension = dimension
        super().__init__(
            f"Label {label} is out of range for register {register_index} "
            f"of dimension {dimension}"
        )


class DimensionMismatchError(BaseSimulationError):
    """Raised when two dimensions that must agree do not."""

    def __init__(self, what: str, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected dimension {expected}, got {actual}")


class UnsupportedOperationError(BaseSimulationError):
    """Raised when an operation is undefined for the addressed register."""

    def __init__(self, message="Operation is not supported for this register."):
        super().__init__(message)


class NonUnitaryError(BaseSimulationError):
    """Raised when a matrix fails the unitarity check."""

    def __init__(self, label: str, error: float):
        self.error = error
        super().__init__(f"Matrix '{label}' is not unitary (max |U^dagger U - I| = {error:.3e})")


class StateNormalizationError(BaseSimulationError):
    """Raised when an amplitude vector is not a unit vector."""

    def __init__(self, norm_squared: float):
        self.norm_squared = norm_squared
        super().__init__(f"State is not normalized (squared norm = {norm_squared!r})")


class CompositeDimensionLimitError(BaseSimulationError):
    """Raised when a register layout exceeds the configured size cap."""

    def __init__(self, total: int, limit: int):
        self.total = total
        self.limit = limit
        super().__init__(f"Composite dimension {total} exceeds the limit of {limit}")
