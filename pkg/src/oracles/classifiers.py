import logging
import math
from collections import defaultdict
from enum import Enum
from typing import Optional

from src.exceptions.number_theory import NotCoprimeError
from src.exceptions.oracles import CodomainError, PromiseViolationError
from src.oracles.truth_tables import PromiseKindEnum, PromiseTag, TruthTable


logger = logging.getLogger(__name__)


class FunctionClassEnum(str, Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"
    NEITHER = "neither"


def classify_constant_balanced(f: TruthTable) -> FunctionClassEnum:
    if f.codomain_size != 2:
        raise CodomainError(2, f.codomain_size)
    ones = sum(f.values)
    if ones == 0 or ones == f.domain_size:
        return FunctionClassEnum.CONSTANT
    if 2 * ones == f.domain_size:
        return FunctionClassEnum.BALANCED
    return FunctionClassEnum.NEITHER


def brute_force_simon_period(f: TruthTable) -> Optional[int]:
    """
    The nonzero r with f(x) = f(y) iff y = x XOR r, found by comparing every
    pair of inputs. None when f is not 2-to-1 on XOR cosets.
    """
    size = f.domain_size
    if size < 2 or size & (size - 1):
        return None
    classes = defaultdict(list)
    for x, value in enumerate(f.values):
        classes[value].append(x)
    period = None
    for members in classes.values():
        if len(members) != 2:
            return None
        difference = members[0] ^ members[1]
        if period is None:
            period = difference
        elif difference != period:
            return None
    return period


def brute_force_order(a: int, modulus: int) -> int:
    """Smallest r >= 1 with a^r = 1 mod N, by iteration."""
    if math.gcd(a, modulus) != 1:
        raise NotCoprimeError(a, modulus)
    if modulus == 1:
        return 1
    value = a % modulus
    r = 1
    while value != 1:
        value = (value * a) % modulus
        r += 1
    return r


def verify_promise(f: TruthTable, tag: PromiseTag) -> bool:
    if tag.kind in (PromiseKindEnum.CONSTANT, PromiseKindEnum.BALANCED, PromiseKindEnum.CONSTANT_OR_BALANCED):
        if f.codomain_size != 2:
            return False
        function_class = classify_constant_balanced(f)
        if tag.kind == PromiseKindEnum.CONSTANT:
            return function_class == FunctionClassEnum.CONSTANT
        if tag.kind == PromiseKindEnum.BALANCED:
            return function_class == FunctionClassEnum.BALANCED
        return function_class != FunctionClassEnum.NEITHER
    if tag.kind == PromiseKindEnum.SIMON_PERIODIC:
        return brute_force_simon_period(f) == tag.r
    if f.codomain_size < tag.modulus or math.gcd(tag.a, tag.modulus) != 1:
        return False
    return all(value == pow(tag.a, x, tag.modulus) for x, value in enumerate(f.values))


def require_promise(f: TruthTable, tag: PromiseTag) -> None:
    if not verify_promise(f, tag):
        logger.warning(f"Rejected function: {tag.kind.value} promise does not hold")
        raise PromiseViolationError(tag.kind.value)
