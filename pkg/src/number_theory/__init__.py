from src.number_theory.arithmetic import (
    Fraction,
    ShorInputCheck,
    ShorInputStatusEnum,
    check_modulus,
    gcd,
    integer_root,
    is_order_of,
    is_prime,
    mod_exp,
    perfect_power_base,
    reduce,
    validate_shor_input
)
from src.number_theory.gf2 import (
    dot,
    from_bitstring,
    gf2_rank,
    solve_gf2,
    to_bitstring
)
