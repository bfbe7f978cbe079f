import numpy as np
import pytest

from src.exceptions.oracles import PromiseViolationError
from src.logic import basis_labels, meet
from src.number_theory import dot, from_bitstring
from src.oracles import TruthTable, make_simon_instance
from src.providers.numpy_random_provider import NumpyRandomSource
from src.services.simon.simon_service import simon_final_state, simon_period_subspace
from src.simulation import (
    apply,
    basis_state,
    condition_on_register,
    hadamard_layer,
    marginal_distribution,
    oracle_xor_unitary,
    register_factor,
    states_equal_up_to_phase,
    two_register_layout,
)


def test_period_subspace_examples():
    assert basis_labels(simon_period_subspace(2, from_bitstring("10"))) == [0, 1]
    assert basis_labels(simon_period_subspace(3, from_bitstring("111"))) == [0, 3, 5, 6]
    for n in (2, 3, 4):
        for r in range(1, 2 ** n):
            assert simon_period_subspace(n, r).dimension == 2 ** (n - 1)
    with pytest.raises(PromiseViolationError):
        simon_period_subspace(3, 0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sampling_law_is_uniform_on_orthogonal_outcomes(rng, n):
    for r in range(1, 2 ** n):
        distribution = marginal_distribution(simon_final_state(make_simon_instance(n, r, rng), n), 0)
        for y, probability in enumerate(distribution):
            expected = 1 / 2 ** (n - 1) if dot(y, r) == 0 else 0.0
            assert probability == pytest.approx(expected, abs=1e-9)


def test_outcome_support_examples(simon_service, rng):
    assert simon_service.outcome_support(make_simon_instance(2, 3, rng), 2, 1e-9) == [0, 3]
    assert simon_service.outcome_support(make_simon_instance(3, 1, rng), 3, 1e-9) == [0, 2, 4, 6]


def test_simon_recovers_period(simon_service):
    for seed, source in enumerate(NumpyRandomSource(21).spawn(60)):
        r = seed % 7 + 1
        report = simon_service.simon(make_simon_instance(3, r, source), 3, source, max_trials=30)
        assert report.conclusive
        assert report.verdict == r
        assert report.details["period_bits"] == format(r, "03b")
        assert all(dot(from_bitstring(y), r) == 0 for y in report.details["outcomes"])


def test_simon_two_outcomes_can_suffice(simon_service, scripted_source):
    f = make_simon_instance(3, 1, NumpyRandomSource(0))

    report = simon_service.simon(f, 3, scripted_source([2, 4]))

    assert report.trials_used == 2
    assert report.verdict == 1
    assert report.details["geometric_period"] == 1
    assert report.geometry[1].basis_labels == [0, 2, 4, 6]
    assert report.geometry[1].contains_final


def test_simon_exhausts_trials(simon_service, scripted_source):
    f = make_simon_instance(3, 1, NumpyRandomSource(0))

    report = simon_service.simon(f, 3, scripted_source([0, 2, 2]), max_trials=3)

    assert not report.conclusive
    assert report.verdict is None
    assert report.trials_used == 3


def test_simon_rejects_non_periodic_function(simon_service):
    f = TruthTable(domain_size=4, codomain_size=4, values=(0, 1, 2, 3))

    with pytest.raises(PromiseViolationError):
        simon_service.simon(f, 2)


def test_simon_two_bit_geometry(simon_service):
    report = simon_service.simon_geometry_report(2, seed=0)

    assert [entry.basis_labels for entry in report.geometry] == [[0, 2], [0, 1], [0, 3]]
    assert report.details["pairwise_meet_dimensions"] == [1]
    assert all(entry.contains_final for entry in report.geometry)


def test_simon_three_bit_pairwise_meets(simon_service):
    subspaces = [sub for _, sub in simon_service.simon_geometry(3)]

    assert {meet(a, b).dimension for i, a in enumerate(subspaces) for b in subspaces[i + 1:]} == {2}
    report = simon_service.simon_geometry_report(3, seed=0, r=5)
    assert sum(entry.contains_final for entry in report.geometry) == 1


def test_output_measurement_collapses_input_to_coset(rng):
    f = make_simon_instance(2, from_bitstring("10"), rng)
    layout = two_register_layout(4, 4)
    state = hadamard_layer(basis_state(layout, (0, 0)), 0)
    state = apply(oracle_xor_unitary(f, layout), state)

    collapsed = register_factor(condition_on_register(state, 1, f(0)), 0)

    assert states_equal_up_to_phase(collapsed, np.array([1, 0, 1, 0]) / np.sqrt(2))
