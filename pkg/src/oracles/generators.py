import itertools
import math
from typing import Iterator

from src.exceptions.number_theory import NotCoprimeError
from src.exceptions.oracles import PromiseViolationError, TruthTableError
from src.number_theory.arithmetic import check_modulus
from src.oracles.truth_tables import TruthTable
from src.providers.random_provider import RandomSourceInterface


DEUTSCH_ORACLES = {
    "constant0": (0, 0),
    "constant1": (1, 1),
    "identity": (0, 1),
    "not": (1, 0),
}


def named_deutsch_oracle(name: str) -> TruthTable:
    """One of the four functions B -> B."""
    if name not in DEUTSCH_ORACLES:
        raise TruthTableError(
            "oracle",
            f"unknown oracle '{name}', expected one of {', '.join(DEUTSCH_ORACLES)}"
        )
    return TruthTable(domain_size=2, codomain_size=2, values=DEUTSCH_ORACLES[name])


def constant_table(n: int, value: int) -> TruthTable:
    return TruthTable(domain_size=2 ** n, codomain_size=2, values=(value,) * 2 ** n)


def random_balanced_table(n: int, rng: RandomSourceInterface) -> TruthTable:
    size = 2 ** n
    values = [0] * size
    for x in rng.permutation(size)[: size // 2]:
        values[x] = 1
    return TruthTable(domain_size=size, codomain_size=2, values=tuple(values))


def constant_or_balanced_tables(n: int) -> Iterator[TruthTable]:
    """Every function on n bits satisfying the constant-or-balanced promise."""
    size = 2 ** n
    yield constant_table(n, 0)
    yield constant_table(n, 1)
    for ones in itertools.combinations(range(size), size // 2):
        values = [0] * size
        for x in ones:
            values[x] = 1
        yield TruthTable(domain_size=size, codomain_size=2, values=tuple(values))


def make_simon_instance(n: int, r: int, rng: RandomSourceInterface) -> TruthTable:
    """
    A 2-to-1 function on n bits with f(x) = f(x XOR r).

    Each coset {x, x XOR r} gets a distinct label drawn uniformly at random
    from {0..2^n - 1}.
    """
    size = 2 ** n
    if not 0 < r < size:
        raise PromiseViolationError("simon", f"period must satisfy 0 < r < {size}, got {r}")
    labels = rng.permutation(size)
    coset_labels = {}
    values = []
    for x in range(size):
        representative = min(x, x ^ r)
        if representative not in coset_labels:
            coset_labels[representative] = labels[len(coset_labels)]
        values.append(coset_labels[representative])
    return TruthTable(domain_size=size, codomain_size=size, values=tuple(values))


def make_modexp_table(a: int, modulus: int, s: int) -> TruthTable:
    """values[x] = a^x mod N for x in {0..s-1}."""
    check_modulus(modulus)
    if math.gcd(a, modulus) != 1:
        raise NotCoprimeError(a, modulus)
    if not 0 < a < modulus:
        raise TruthTableError("a", f"expected 0 < a < {modulus}, got {a}")
    if s < 2:
        raise TruthTableError("domain_size", f"expected s >= 2, got {s}")
    return TruthTable(
        domain_size=s,
        codomain_size=modulus,
        values=tuple(pow(a, x, modulus) for x in range(s)),
    )
