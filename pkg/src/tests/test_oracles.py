import json

import pytest

from src.exceptions.number_theory import NotCoprimeError
from src.exceptions.oracles import CodomainError, PromiseViolationError, TruthTableError
from src.oracles import (
    DEUTSCH_ORACLES,
    FunctionClassEnum,
    PromiseKindEnum,
    PromiseTag,
    TruthTable,
    brute_force_order,
    brute_force_simon_period,
    classify_constant_balanced,
    constant_or_balanced_tables,
    constant_table,
    load_truth_table,
    make_modexp_table,
    make_simon_instance,
    named_deutsch_oracle,
    random_balanced_table,
    require_promise,
    verify_promise,
)


def test_truth_table_rejects_value_outside_codomain():
    with pytest.raises(ValueError):
        TruthTable(domain_size=2, codomain_size=2, values=(0, 2))
    with pytest.raises(ValueError):
        TruthTable(domain_size=4, codomain_size=2, values=(0, 1))


def test_named_deutsch_oracles():
    assert named_deutsch_oracle("identity")(1) == 1
    assert named_deutsch_oracle("not")(1) == 0
    with pytest.raises(TruthTableError):
        named_deutsch_oracle("xor")


def test_classify_the_four_boolean_functions():
    classes = {name: classify_constant_balanced(named_deutsch_oracle(name)) for name in DEUTSCH_ORACLES}

    assert classes == {
        "constant0": FunctionClassEnum.CONSTANT,
        "constant1": FunctionClassEnum.CONSTANT,
        "identity": FunctionClassEnum.BALANCED,
        "not": FunctionClassEnum.BALANCED,
    }


def test_classify_neither_and_wrong_codomain():
    assert classify_constant_balanced(
        TruthTable(domain_size=4, codomain_size=2, values=(1, 0, 0, 0))
    ) == FunctionClassEnum.NEITHER
    with pytest.raises(CodomainError):
        classify_constant_balanced(TruthTable(domain_size=2, codomain_size=3, values=(0, 2)))


def test_promised_tables_for_two_bits():
    tables = list(constant_or_balanced_tables(2))

    assert len(tables) == 8
    assert sum(classify_constant_balanced(t) == FunctionClassEnum.BALANCED for t in tables) == 6


def test_random_balanced_table(rng):
    table = random_balanced_table(5, rng)

    assert classify_constant_balanced(table) == FunctionClassEnum.BALANCED
    assert verify_promise(table, PromiseTag(kind=PromiseKindEnum.BALANCED))


def test_simon_instance_has_its_period(rng):
    for r in range(1, 8):
        table = make_simon_instance(3, r, rng)
        assert brute_force_simon_period(table) == r
        assert verify_promise(table, PromiseTag(kind=PromiseKindEnum.SIMON_PERIODIC, r=r))


def test_simon_period_of_non_periodic_function():
    table = TruthTable(domain_size=4, codomain_size=4, values=(0, 0, 1, 2))

    assert brute_force_simon_period(table) is None
    with pytest.raises(PromiseViolationError):
        require_promise(table, PromiseTag(kind=PromiseKindEnum.SIMON_PERIODIC, r=1))
    with pytest.raises(PromiseViolationError):
        make_simon_instance(2, 0, None)


def test_brute_force_orders_mod_15():
    orders = [brute_force_order(a, 15) for a in (2, 4, 7, 8, 11, 13, 14)]

    assert orders == [4, 2, 4, 4, 2, 4, 2]
    with pytest.raises(NotCoprimeError):
        brute_force_order(6, 15)


def test_modexp_table():
    table = make_modexp_table(7, 15, 8)

    assert table.values == (1, 7, 4, 13, 1, 7, 4, 13)
    assert verify_promise(table, PromiseTag(kind=PromiseKindEnum.MODEXP, a=7, modulus=15))
    assert not verify_promise(table, PromiseTag(kind=PromiseKindEnum.MODEXP, a=2, modulus=15))


def test_constant_promise():
    assert verify_promise(constant_table(3, 1), PromiseTag(kind=PromiseKindEnum.CONSTANT))
    assert not verify_promise(constant_table(3, 1), PromiseTag(kind=PromiseKindEnum.BALANCED))


def test_load_truth_table(tmp_path):
    path = tmp_path / "oracle.json"
    path.write_text(json.dumps({"domain_size": 2, "codomain_size": 2, "values": [1, 0]}))

    assert load_truth_table(path) == named_deutsch_oracle("not")


@pytest.mark.parametrize(
    "payload, field",
    [
        ({"domain_size": 2, "codomain_size": 2}, "values"),
        ({"domain_size": "two", "codomain_size": 2, "values": [0, 1]}, "domain_size"),
        ({"domain_size": 2, "codomain_size": 2, "values": [0, 5]}, "values"),
    ],
)
def test_load_truth_table_names_offending_field(tmp_path, payload, field):
    path = tmp_path / "oracle.json"
    path.write_text(json.dumps(payload))

    with pytest.raises(TruthTableError) as exc_info:
        load_truth_table(path)
    assert exc_info.value.field == field


def test_load_truth_table_bad_json(tmp_path):
    path = tmp_path / "oracle.json"
    path.write_text("{not json")

    with pytest.raises(TruthTableError) as exc_info:
        load_truth_table(path)
    assert exc_info.value.field == "file"
    with pytest.raises(TruthTableError):
        load_truth_table(tmp_path / "missing.json")
