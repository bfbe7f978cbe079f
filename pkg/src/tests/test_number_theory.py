import math

import pytest

from src.exceptions.number_theory import GcdUndefinedError, ModulusRangeError
from src.number_theory import (
    Fraction,
    ShorInputStatusEnum,
    dot,
    from_bitstring,
    gcd,
    gf2_rank,
    integer_root,
    is_order_of,
    is_prime,
    mod_exp,
    perfect_power_base,
    reduce,
    solve_gf2,
    validate_shor_input,
)
from src.oracles import brute_force_order


def test_gcd_of_the_worked_example():
    assert gcd(48, 15) == 3
    assert gcd(50, 15) == 5
    assert gcd(9, 0) == 9
    with pytest.raises(GcdUndefinedError):
        gcd(0, 0)


def test_gcd_divides_both_arguments():
    for a in range(0, 60):
        for b in range(1, 60):
            g = gcd(a, b)
            assert a % g == 0 and b % g == 0
            assert g == math.gcd(a, b)


def test_mod_exp():
    assert mod_exp(7, 3, 15) == 13
    assert mod_exp(14, 1, 15) == 14
    assert mod_exp(5, 0, 21) == 1
    with pytest.raises(ModulusRangeError):
        mod_exp(2, 3, 1)


def test_mod_exp_agrees_with_repeated_multiplication():
    for modulus in range(2, 30):
        for a in range(0, 30):
            value = 1
            for e in range(0, 12):
                assert mod_exp(a, e, modulus) == value % modulus
                value *= a


def test_reduce_fraction():
    assert reduce(Fraction(numerator=16, denominator=64)) == Fraction(numerator=1, denominator=4)
    assert reduce(Fraction(numerator=32, denominator=64)) == Fraction(numerator=1, denominator=2)
    assert reduce(Fraction(numerator=0, denominator=64)) == Fraction(numerator=0, denominator=1)
    with pytest.raises(ValueError):
        Fraction(numerator=1, denominator=0)


def test_reduce_is_idempotent_and_exact():
    for numerator in range(0, 40):
        fraction = Fraction(numerator=numerator, denominator=36)
        reduced = reduce(fraction)
        assert reduce(reduced) == reduced
        assert reduced.numerator * fraction.denominator == fraction.numerator * reduced.denominator


def test_order_is_minimal():
    for modulus in range(2, 51):
        for a in range(1, modulus):
            if math.gcd(a, modulus) != 1:
                continue
            r = brute_force_order(a, modulus)
            assert is_order_of(a, r, modulus)
            assert not any(mod_exp(a, k, modulus) == 1 for k in range(1, r))


def test_integer_root_and_perfect_powers():
    assert integer_root(26, 3) == 2
    assert integer_root(27, 3) == 3
    assert perfect_power_base(16) == 2
    assert perfect_power_base(243) == 3
    assert perfect_power_base(15) is None


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize(
    "modulus, status, factor",
    [
        (15, ShorInputStatusEnum.OK, None),
        (21, ShorInputStatusEnum.OK, None),
        (16, ShorInputStatusEnum.EVEN, 2),
        (9, ShorInputStatusEnum.PERFECT_POWER, 3),
        (13, ShorInputStatusEnum.PRIME, None),
    ],
)
def test_validate_shor_input(modulus, status, factor):
    check = validate_shor_input(modulus)

    assert check.status == status
    assert check.factor == factor
    assert check.accepted == (status == ShorInputStatusEnum.OK)


def test_solve_gf2_examples():
    assert solve_gf2([from_bitstring("010"), from_bitstring("100")], 3) == [from_bitstring("001")]
    assert solve_gf2([], 2) == [1, 2]
    assert solve_gf2([from_bitstring("011"), from_bitstring("101")], 3) == [from_bitstring("111")]


def test_solve_gf2_agrees_with_brute_force():
    for n in range(1, 6):
        for first in range(2 ** n):
            for second in (0, 1, 2 ** n - 1):
                equations = [first, second]
                basis = solve_gf2(equations, n)
                solutions = {r for r in range(1, 2 ** n) if all(dot(y, r) == 0 for y in equations)}
                assert len(basis) == n - gf2_rank(equations, n)
                assert all(vector in solutions for vector in basis)
                assert len(solutions) == 2 ** len(basis) - 1


def test_solve_gf2_rejects_wide_rows():
    with pytest.raises(ValueError):
        solve_gf2([8], 3)
