class BaseAlgorithmError(ValueError):
    """Base class for errors raised while running a quantum procedure."""
    pass


class ImpossibleOutcomeError(BaseAlgorithmError):
    """Raised when a measurement returns an outcome of probability zero."""

    def __init__(self, algorithm: str, outcome: str):
        self.algorithm = algorithm
        self.outcome = outcome
        super().__init__(f"{algorithm} produced the impossible outcome {outcome}")
