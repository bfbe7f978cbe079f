class BaseNumberTheoryError(ValueError):
    """Base class for all integer-arithmetic errors."""

    def __init__(self, message=None):
        if message is None:
            message = "An arithmetic error occurred."
        super().__init__(message)


class GcdUndefinedError(BaseNumberTheoryError):
    def __init__(self, a: int, b: int):
        super().__init__(f"gcd({a}, {b}) is undefined")


class ModulusRangeError(BaseNumberTheoryError):
    def __init__(self, modulus: int, limit: int):
        self.modulus = modulus
        super().__init__(f"Modulus {modulus} is outside the supported range [2, {limit}]")


class NotCoprimeError(BaseNumberTheoryError):
    def __init__(self, a: int, modulus: int):
        self.a = a
        self.modulus = modulus
        super().__init__(f"{a} is not coprime to {modulus}")


class ShorInputError(BaseNumberTheoryError):
    """Raised when a number cannot be handed to the quantum factoring loop."""

    def __init__(self, modulus: int, reason: str):
        self.modulus = modulus
        self.reason = reason
        super().__init__(f"Cannot factor {modulus}: {reason}")
