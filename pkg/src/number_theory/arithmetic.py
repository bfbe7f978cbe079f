import logging
import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator

from src.config import get_settings
from src.exceptions.number_theory import (
    BaseNumberTheoryError,
    GcdUndefinedError,
    ModulusRangeError,
)


logger = logging.getLogger(__name__)


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two non-negative integers (Euclid)."""
    if a < 0 or b < 0:
        raise BaseNumberTheoryError(f"gcd expects non-negative arguments, got ({a}, {b})")
    if a == 0 and b == 0:
        raise GcdUndefinedError(a, b)
    return math.gcd(a, b)


def check_modulus(modulus: int) -> None:
    limit = get_settings().MAX_MODULUS
    if not 2 <= modulus <= limit:
        raise ModulusRangeError(modulus, limit)


def mod_exp(a: int, exponent: int, modulus: int) -> int:
    """a^exponent mod modulus by square-and-multiply."""
    check_modulus(modulus)
    if exponent < 0:
        raise BaseNumberTheoryError(f"Exponent must be non-negative, got {exponent}")
    return pow(a, exponent, modulus)


def is_order_of(a: int, r: int, modulus: int) -> bool:
    """True when a^r = 1 mod N (r is a multiple of the order of a)."""
    return r >= 1 and mod_exp(a, r, modulus) == 1


class Fraction(BaseModel):
    numerator: int
    denominator: int

    model_config = ConfigDict(frozen=True)

    @field_validator("numerator")
    @classmethod
    def validate_numerator(cls, value: int) -> int:
        if value < 0:
            raise ValueError("numerator must be non-negative")
        return value

    @field_validator("denominator")
    @classmethod
    def validate_denominator(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("denominator must be positive")
        return value

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def reduce(fraction: Fraction) -> Fraction:
    """Cancel a fraction to lowest terms; 0/s becomes 0/1."""
    divisor = math.gcd(fraction.numerator, fraction.denominator)
    return Fraction(
        numerator=fraction.numerator // divisor,
        denominator=fraction.denominator // divisor,
    )


def integer_root(value: int, k: int) -> int:
    """Largest b with b**k <= value."""
    if value < 0 or k < 1:
        raise BaseNumberTheoryError(f"integer_root needs value >= 0 and k >= 1, got ({value}, {k})")
    if value < 2 or k == 1:
        return value
    low, high = 1, 1 << (value.bit_length() // k + 1)
    while low < high:
        middle = (low + high + 1) // 2
        if middle ** k <= value:
            low = middle
        else:
            high = middle - 1
    return low


def perfect_power_base(value: int) -> Optional[int]:
    """Smallest base b with b**k == value for some k >= 2, or None."""
    for k in range(value.bit_length(), 1, -1):
        base = integer_root(value, k)
        if base > 1 and base ** k == value:
            return base
    return None


def is_prime(value: int) -> bool:
    if value < 2:
        return False
    if value % 2 == 0:
        return value == 2
    for divisor in range(3, math.isqrt(value) + 1, 2):
        if value % divisor == 0:
            return False
    return True


class ShorInputStatusEnum(str, Enum):
    OK = "ok"
    EVEN = "even"
    PRIME = "prime"
    PERFECT_POWER = "perfect_power"


class ShorInputCheck(BaseModel):
    modulus: int
    status: ShorInputStatusEnum
    factor: Optional[int] = None

    @property
    def accepted(self) -> bool:
        return self.status == ShorInputStatusEnum.OK


def validate_shor_input(modulus: int) -> ShorInputCheck:
    """
    Decide whether N needs the quantum period-finding loop.

    Primes are rejected. Even numbers and perfect powers are rejected with a
    classical factor (2, or the base of the power).
    """
    check_modulus(modulus)
    if is_prime(modulus):
        status, factor = ShorInputStatusEnum.PRIME, None
    elif modulus % 2 == 0:
        status, factor = ShorInputStatusEnum.EVEN, 2
    else:
        base = perfect_power_base(modulus)
        if base is not None:
            status, factor = ShorInputStatusEnum.PERFECT_POWER, base
        else:
            status, factor = ShorInputStatusEnum.OK, None
    if status != ShorInputStatusEnum.OK:
        logger.warning(f"N={modulus} is not a quantum factoring input: {status.value}")
    return ShorInputCheck(modulus=modulus, status=status, factor=factor)
