import logging
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from src.exceptions.simulation import StateNormalizationError
from src.providers.random_provider import RandomSourceInterface
from src.simulation.registers import RegisterLayout
from src.simulation.states import StateVector, basis_state, condition_on_register
from src.simulation.unitaries import hadamard_layer


logger = logging.getLogger(__name__)


class MeasurementRecord(BaseModel):
    register_index: int
    outcome: int
    probability: float
    post_state: StateVector

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("probability")
    @classmethod
    def validate_probability(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0 + 1e-12:
            raise ValueError(f"Probability {value} is outside [0, 1]")
        return min(value, 1.0)


def marginal_distribution(state: StateVector, register_index: int) -> np.ndarray:
    """Outcome probabilities of a computational-basis measurement of one register."""
    state.layout.check_register(register_index)
    probabilities = np.abs(state.tensor()) ** 2
    other_axes = tuple(axis for axis in range(state.layout.register_count) if axis != register_index)
    return probabilities.sum(axis=other_axes) if other_axes else probabilities


def measure(
        state: StateVector,
        register_index: int,
        rng: RandomSourceInterface
) -> MeasurementRecord:
    """
    Projective measurement of one register in the computational basis.

    The outcome is drawn from marginal_distribution and the returned post
    state is the renormalized projection onto it.
    """
    distribution = marginal_distribution(state, register_index)
    total = float(distribution.sum())
    if total == 0.0:
        raise StateNormalizationError(0.0)
    outcome = rng.choice(distribution)
    probability = float(distribution[outcome])
    logger.debug(f"Measured register {register_index}: outcome {outcome} with probability {probability:.6f}")
    return MeasurementRecord(
        register_index=register_index,
        outcome=outcome,
        probability=probability,
        post_state=condition_on_register(state, register_index, outcome),
    )


def prime_basis_state(layout: RegisterLayout, labels: Sequence[int]) -> StateVector:
    """|x'>|y'>: a computational basis state with H applied on every register."""
    state = basis_state(layout, labels)
    for register_index in range(layout.register_count):
        state = hadamard_layer(state, register_index)
    return state
