class CliUsageError(ValueError):
    """Raised when the command line cannot be parsed into a configuration."""

    def __init__(self, message="Invalid command line."):
        super().__init__(message)
