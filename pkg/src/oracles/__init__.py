from src.oracles.truth_tables import (
    PromiseKindEnum,
    PromiseTag,
    TruthTable,
    load_truth_table
)
from src.oracles.classifiers import (
    FunctionClassEnum,
    brute_force_order,
    brute_force_simon_period,
    classify_constant_balanced,
    require_promise,
    verify_promise
)
from src.oracles.generators import (
    DEUTSCH_ORACLES,
    constant_or_balanced_tables,
    constant_table,
    make_modexp_table,
    make_simon_instance,
    named_deutsch_oracle,
    random_balanced_table
)
