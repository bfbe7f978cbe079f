from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.config import get_settings, resolve_tolerance
from src.exceptions.simulation import (
    DimensionMismatchError,
    RegisterLabelError,
    StateNormalizationError,
    UnsupportedOperationError,
)
from src.simulation.registers import RegisterLayout


def _frozen_array(values) -> np.ndarray:
    array = np.array(values, dtype=complex)
    array.setflags(write=False)
    return array


class StateVector(BaseModel):
    """Unit vector of complex amplitudes over a composite register space."""
    amplitudes: np.ndarray
    layout: RegisterLayout

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("amplitudes", mode="before")
    @classmethod
    def validate_amplitudes(cls, value) -> np.ndarray:
        array = _frozen_array(value)
        if array.ndim != 1:
            raise ValueError("Amplitudes must be a one-dimensional vector")
        return array

    @model_validator(mode="after")
    def validate_state(self) -> "StateVector":
        if self.amplitudes.size != self.layout.total_dimension:
            raise DimensionMismatchError(
                "Amplitude vector", self.layout.total_dimension, self.amplitudes.size
            )
        norm_squared = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm_squared - 1.0) > get_settings().NORM_TOLERANCE:
            raise StateNormalizationError(norm_squared)
        return self

    @property
    def dimension(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per register."""
        return self.amplitudes.reshape(self.layout.register_dims)

    def amplitude(self, labels: Tuple[int, ...]) -> complex:
        return complex(self.amplitudes[self.layout.composite_index(labels)])


def state_from_amplitudes(
        amplitudes: Sequence[complex],
        layout: RegisterLayout,
        normalize: bool = False
) -> StateVector:
    array = np.array(amplitudes, dtype=complex)
    if normalize:
        norm = np.linalg.norm(array)
        if norm == 0:
            raise StateNormalizationError(0.0)
        array = array / norm
    return StateVector(amplitudes=array, layout=layout)


def basis_state(layout: RegisterLayout, labels: Sequence[int]) -> StateVector:
    labels = tuple(int(label) for label in labels)
    if len(labels) != layout.register_count:
        raise DimensionMismatchError("Register labels", layout.register_count, len(labels))
    for register_index, (label, dim) in enumerate(zip(labels, layout.register_dims)):
        if not 0 <= label < dim:
            raise RegisterLabelError(register_index, label, dim)
    amplitudes = np.zeros(layout.total_dimension, dtype=complex)
    amplitudes[layout.composite_index(labels)] = 1.0
    return StateVector(amplitudes=amplitudes, layout=layout)


def _register_matrix(state: StateVector, register_index: int) -> np.ndarray:
    """The state as a (register dimension) x (rest) matrix."""
    state.layout.check_register(register_index)
    tensor = np.moveaxis(state.tensor(), register_index, 0)
    return tensor.reshape(state.layout.register_dims[register_index], -1)


def reduced_density_matrix(state: StateVector, register_index: int) -> np.ndarray:
    matrix = _register_matrix(state, register_index)
    return matrix @ matrix.conj().T


def register_factor(
        state: StateVector,
        register_index: int,
        tolerance: float | None = None
) -> np.ndarray:
    """
    Pure state of one register when the composite state is a product across
    that register and the rest. Defined up to a global phase; the largest
    entry is made real and positive.
    """
    tolerance = resolve_tolerance(tolerance)
    matrix = _register_matrix(state, register_index)
    left, singular_values, _ = np.linalg.svd(matrix, full_matrices=False)
    if singular_values.size > 1 and singular_values[1] > np.sqrt(tolerance):
        raise UnsupportedOperationError(
            f"Register {register_index} is entangled with the rest of the state"
        )
    factor = left[:, 0]
    pivot = factor[int(np.argmax(np.abs(factor)))]
    return factor * (abs(pivot) / pivot)


def condition_on_register(
        state: StateVector,
        register_index: int,
        outcome: int
) -> StateVector:
    """Renormalized projection of the state onto one outcome of a register."""
    dim = state.layout.dimension(register_index)
    if not 0 <= outcome < dim:
        raise RegisterLabelError(register_index, outcome, dim)
    tensor = np.moveaxis(state.tensor(), register_index, 0).copy()
    mask = np.zeros(dim, dtype=bool)
    mask[outcome] = True
    tensor[~mask] = 0
    projected = np.moveaxis(tensor, 0, register_index).reshape(-1)
    norm = np.linalg.norm(projected)
    if norm == 0:
        raise UnsupportedOperationError(
            f"Outcome {outcome} of register {register_index} has probability zero"
        )
    return StateVector(amplitudes=projected / norm, layout=state.layout)


def states_equal_up_to_phase(
        first,
        second,
        tolerance: float | None = None
) -> bool:
    """Compare |<v|w>| with 1, so that v and e^{i theta} v are equal."""
    tolerance = resolve_tolerance(tolerance)
    left = first.amplitudes if isinstance(first, StateVector) else np.asarray(first, dtype=complex)
    right = second.amplitudes if isinstance(second, StateVector) else np.asarray(second, dtype=complex)
    if left.shape != right.shape:
        return False
    left_norm = np.linalg.norm(left)
    right_norm = np.linalg.norm(right)
    if left_norm == 0 or right_norm == 0:
        return False
    overlap = float(abs(np.vdot(left, right)) / (left_norm * right_norm))
    return abs(overlap - 1.0) <= tolerance
