import numpy as np
import pytest

from src.config.dependencies import get_shor_service
from src.exceptions.number_theory import NotCoprimeError, ShorInputError
from src.logic import includes
from src.providers.numpy_random_provider import NumpyRandomSource
from src.schemas.reports import ShorFailureEnum
from src.services.shor.shor_service import FINAL_STATE_CACHE_SIZE, _final_state, window_mass
from src.simulation import (
    condition_on_register,
    marginal_distribution,
    register_factor,
    states_equal_up_to_phase,
)


def test_worked_example_distribution(shor_service):
    distribution = shor_service.post_qft_distribution(7, 15, 64)

    expected = np.zeros(64)
    expected[[0, 16, 32, 48]] = 0.25
    assert np.allclose(distribution, expected, atol=1e-9)


@pytest.mark.parametrize("a, modulus, s", [(7, 15, 64), (4, 15, 32), (11, 15, 16), (2, 21, 48)])
def test_exact_division_law(shor_service, a, modulus, s):
    r = {7: 4, 4: 2, 11: 2, 2: 6}[a]
    distribution = shor_service.post_qft_distribution(a, modulus, s)

    peaks = [k * s // r for k in range(r)]
    assert np.allclose(distribution[peaks], 1 / r, atol=1e-9)
    assert np.sum(distribution) - np.sum(distribution[peaks]) < 1e-9


def test_offset_states_match_phase_patterns(shor_service):
    states = shor_service.shor_offset_states(7, 15, 64)

    assert [state.output_label for state in states] == [1, 7, 4, 13]
    for state in states:
        m = state.offset
        pattern = np.zeros(64, dtype=complex)
        pattern[[0, 16, 32, 48]] = 0.5 * np.array([1, 1j ** m, (-1) ** m, (-1j) ** m])
        assert states_equal_up_to_phase(state.amplitudes, pattern)


def test_exact_output_dimension_gives_same_distribution(shor_service):
    padded = shor_service.post_qft_distribution(7, 15, 64)
    exact = shor_service.post_qft_distribution(7, 15, 64, exact_output_dim=True)

    assert shor_service.shor_layout(15, 64, exact_output_dim=True).register_dims == (64, 15)
    assert np.allclose(padded, exact)


@pytest.mark.parametrize("c, candidate_r", [(16, 4), (32, 2), (48, 4)])
def test_period_sample_cancels_to_lowest_terms(shor_service, scripted_source, c, candidate_r):
    sample = shor_service.shor_period_sample(7, 15, 64, scripted_source([c]))

    assert sample.c == c
    assert sample.candidate_r == candidate_r
    assert sample.probability == pytest.approx(0.25)
    assert not sample.degenerate
    assert sample.summary.label == format(c, "06b")


def test_degenerate_sample(shor_service, scripted_source):
    sample = shor_service.shor_period_sample(7, 15, 64, scripted_source([0]))

    assert sample.degenerate
    assert sample.candidate_r == 1
    assert shor_service.shor_evaluate_candidate(7, 15, 1, c=0).failure_reason == ShorFailureEnum.DEGENERATE


def test_evaluate_candidate_success(shor_service):
    outcome = shor_service.shor_evaluate_candidate(7, 15, 4)

    assert outcome.success
    assert outcome.half_power == 4
    assert (outcome.gcd_minus, outcome.gcd_plus) == (3, 5)
    assert outcome.factors == [3, 5]


@pytest.mark.parametrize(
    "a, modulus, candidate_r, reason",
    [
        (7, 15, 2, ShorFailureEnum.ORDER_INVALID),
        (4, 21, 3, ShorFailureEnum.ODD),
        (14, 15, 2, ShorFailureEnum.MINUS_ONE),
        (4, 15, 4, ShorFailureEnum.TRIVIAL_FACTORS),
    ],
)
def test_evaluate_candidate_failures(shor_service, a, modulus, candidate_r, reason):
    outcome = shor_service.shor_evaluate_candidate(a, modulus, candidate_r)

    assert not outcome.success
    assert outcome.failure_reason == reason
    assert outcome.minus_one == (reason == ShorFailureEnum.MINUS_ONE)


def test_factor_worked_example(shor_service, scripted_source):
    report = shor_service.shor_factor(15, scripted_source([16]), a=7, s=64)

    assert report.conclusive
    assert report.verdict == [3, 5]
    assert report.trials_used == 1
    v4 = [entry for entry in report.geometry if entry.name == "period subspace V_r=4"]
    assert len(v4) == 1 and v4[0].contains_final
    assert v4[0].basis_labels == [0, 16, 32, 48]


def test_factor_retries_after_ambiguous_outcome(shor_service, scripted_source):
    report = shor_service.shor_factor(15, scripted_source([32, 0, 48]), a=7, s=64)

    assert [r.failure_reason for r in report.rounds] == [
        ShorFailureEnum.ORDER_INVALID, ShorFailureEnum.DEGENERATE, None,
    ]
    assert report.verdict == [3, 5]


def test_forced_a_14_fails_every_round(shor_service, scripted_source):
    report = shor_service.shor_factor(15, scripted_source([32, 32, 32]), a=14, s=64, max_rounds=3)

    assert not report.conclusive
    assert report.verdict is None
    assert all(r.minus_one and r.failure_reason == ShorFailureEnum.MINUS_ONE for r in report.rounds)


def test_lucky_gcd_counts_as_success(shor_service, rng):
    report = shor_service.shor_factor(15, rng, a=6)

    assert report.rounds[0].lucky_gcd
    assert report.verdict == [3, 5]
    assert report.trace == []


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_factor_fifteen_with_random_a(shor_service, seed):
    report = shor_service.shor_factor(15, NumpyRandomSource(seed), max_rounds=20)

    assert report.conclusive
    assert report.verdict == [3, 5]
    assert report.details["s"] == 256


@pytest.mark.parametrize("modulus", [21, 33])
def test_conclusive_factors_are_correct(shor_service, modulus):
    report = shor_service.shor_factor(modulus, NumpyRandomSource(4), max_rounds=20)

    if report.conclusive:
        p, q = report.verdict
        assert 1 < p < modulus and p * q == modulus


@pytest.mark.parametrize("modulus, factors", [(16, [2, 8]), (9, [3, 3]), (25, [5, 5])])
def test_classical_shortcuts(shor_service, modulus, factors):
    report = shor_service.shor_factor(modulus)

    assert report.verdict == factors
    assert report.trials_used == 0
    assert report.details["classical_shortcut"] in ("even", "perfect_power")


def test_factor_rejects_prime_and_bad_a(shor_service):
    with pytest.raises(ShorInputError):
        shor_service.shor_factor(13)
    with pytest.raises(ShorInputError):
        shor_service.shor_factor(15, a=15)


def test_final_state_preconditions(shor_service):
    with pytest.raises(NotCoprimeError):
        shor_service.shor_final_state(5, 15, 64)
    with pytest.raises(ShorInputError):
        shor_service.shor_final_state(7, 15, 8)


def test_non_exact_division_window(shor_service):
    distribution = shor_service.post_qft_distribution(7, 15, 66)
    mass = window_mass(distribution, 66, 4)

    assert mass > 0.9
    assert mass > 1.0 - mass
    assert distribution[0] == pytest.approx(distribution[33])


def test_window_mass_is_circular():
    distribution = np.zeros(8)
    distribution[[7, 0, 1]] = [0.2, 0.5, 0.3]

    assert window_mass(distribution, 8, 1) == pytest.approx(1.0)
    assert window_mass(distribution, 8, 1, radius=0.5) == pytest.approx(0.5)


def test_period_subspaces_nest(shor_service):
    subspaces = dict(shor_service.shor_geometry(7, 15, 64))

    assert sorted(subspaces) == [1, 2, 4]
    assert includes(subspaces[4], subspaces[2])
    assert includes(subspaces[2], subspaces[1])
    assert not includes(subspaces[2], subspaces[4])


def test_non_dividing_orders_are_excluded(shor_service):
    assert sorted(dict(shor_service.shor_geometry(7, 15, 66))) == [1, 2]


def test_geometry_report(shor_service):
    report = shor_service.shor_geometry_report(7, 15, 64, seed=0)

    assert report.details["nested_pairs"] == [[1, 2], [1, 4], [2, 4]]
    assert report.details["order"] == 4
    contained = {tuple(entry.basis_labels): entry.contains_final for entry in report.geometry[:-1]}
    assert contained == {(0,): False, (0, 32): False, (0, 16, 32, 48): True}
    with pytest.raises(ShorInputError):
        shor_service.shor_geometry_report(7, 33, 2048, seed=0)


def test_a_survey_for_fifteen(shor_service):
    survey = {entry.a: entry for entry in shor_service.shor_a_survey(15)}

    assert {a: entry.order for a, entry in survey.items()} == {2: 4, 4: 2, 7: 4, 8: 4, 11: 2, 13: 4, 14: 2}
    assert [a for a, entry in survey.items() if not entry.usable] == [14]
    assert survey[14].minus_one
    assert survey[11].factors == [3, 5]


def test_output_register_holds_powers_of_seven(shor_service):
    distribution = marginal_distribution(shor_service.shor_final_state(7, 15, 64), 1)

    expected = np.zeros(16)
    expected[[1, 7, 4, 13]] = 0.25
    assert np.allclose(distribution, expected, atol=1e-9)


def test_offset_classes_for_non_dividing_s(shor_service):
    stage = shor_service.oracle_stage_state(7, 15, 66)

    for offset, count in enumerate([17, 17, 16, 16]):
        conditioned = condition_on_register(stage, 1, pow(7, offset, 15))
        amplitudes = register_factor(conditioned, 0)
        support = np.flatnonzero(np.abs(amplitudes) > 1e-9)
        assert support.tolist() == list(range(offset, 66, 4))
        assert np.allclose(np.abs(amplitudes[support]), 1 / np.sqrt(count))
    for state in shor_service.shor_offset_states(7, 15, 66):
        assert np.linalg.norm(state.amplitudes) == pytest.approx(1.0)


def test_final_states_are_cached_and_bounded(shor_service):
    first = shor_service.shor_final_state(7, 15, 64)
    second = get_shor_service(0).shor_final_state(7, 15, 64)

    assert first is second
    assert _final_state.cache_info().maxsize == FINAL_STATE_CACHE_SIZE


@pytest.mark.parametrize("arguments", [{"max_rounds": 0}, {"s": 0}, {"max_rounds": -2}])
def test_factor_rejects_explicit_zero_arguments(shor_service, arguments):
    with pytest.raises(ShorInputError):
        shor_service.shor_factor(15, a=7, **arguments)
