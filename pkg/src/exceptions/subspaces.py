class BaseSubspaceError(ValueError):
    """Base class for all subspace-lattice errors."""

    def __init__(self, message=None):
        if message is None:
            message = "A subspace error occurred."
        super().__init__(message)


class AmbientDimensionMismatchError(BaseSubspaceError):
    """Raised when two subspaces live in different ambient spaces."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"Ambient dimensions differ: {left} != {right}")


class NonCommutingCandidatesError(BaseSubspaceError):
    """Raised when candidate subspaces are not simultaneously testable."""

    def __init__(self, first: int, second: int):
        self.first = first
        self.second = second
        super().__init__(f"Candidates {first} and {second} have non-commuting projectors")


class StateOutsideCandidatesError(BaseSubspaceError):
    """Raised when a state lies in none of the candidate subspaces."""

    def __init__(self, message="State is contained in none of the candidate subspaces."):
        super().__init__(message)
