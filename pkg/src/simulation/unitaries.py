import logging
import math
from functools import lru_cache
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.config import get_settings
from src.exceptions.number_theory import NotCoprimeError
from src.exceptions.simulation import (
    DimensionMismatchError,
    NonUnitaryError,
    UnsupportedOperationError,
)
from src.oracles.truth_tables import TruthTable
from src.simulation.registers import RegisterLayout, is_power_of_two
from src.simulation.states import StateVector


logger = logging.getLogger(__name__)


def _readonly(array: np.ndarray) -> np.ndarray:
    if array.flags.writeable:
        array = array.copy()
        array.setflags(write=False)
    return array


class Unitary(BaseModel):
    """
    A unitary operator, held either as a dense matrix or as a permutation of
    basis indices (column ``i`` has its single 1 in row ``permutation[i]``).
    """
    label: str
    dimension: int
    matrix: Optional[np.ndarray] = None
    permutation: Optional[np.ndarray] = None

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("matrix", mode="before")
    @classmethod
    def validate_matrix(cls, value):
        if value is None:
            return None
        return _readonly(np.asarray(value, dtype=complex))

    @field_validator("permutation", mode="before")
    @classmethod
    def validate_permutation(cls, value):
        if value is None:
            return None
        return _readonly(np.asarray(value, dtype=np.int64))

    @model_validator(mode="after")
    def validate_unitary(self) -> "Unitary":
        if (self.matrix is None) == (self.permutation is None):
            raise ValueError("Exactly one of matrix and permutation must be given")
        if self.permutation is not None:
            if self.permutation.shape != (self.dimension,):
                raise DimensionMismatchError(self.label, self.dimension, self.permutation.size)
            if not np.array_equal(np.sort(self.permutation), np.arange(self.dimension)):
                raise NonUnitaryError(self.label, 1.0)
            return self
        if self.matrix.shape != (self.dimension, self.dimension):
            raise DimensionMismatchError(self.label, self.dimension, self.matrix.shape[0])
        settings = get_settings()
        if self.dimension <= settings.UNITARITY_CHECK_MAX_DIMENSION:
            error = self.max_unitarity_error()
            if error > settings.NORM_TOLERANCE:
                raise NonUnitaryError(self.label, error)
        else:
            logger.debug(f"Skipping construction-time unitarity check for {self.label}")
        return self

    def to_dense(self) -> np.ndarray:
        if self.matrix is not None:
            return self.matrix
        dense = np.zeros((self.dimension, self.dimension), dtype=complex)
        dense[self.permutation, np.arange(self.dimension)] = 1.0
        return dense

    def max_unitarity_error(self) -> float:
        if self.permutation is not None:
            return 0.0
        product = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(product - np.eye(self.dimension))))

    def adjoint(self) -> "Unitary":
        if self.permutation is not None:
            return Unitary(
                label=f"{self.label}^dagger",
                dimension=self.dimension,
                permutation=np.argsort(self.permutation),
            )
        return Unitary(
            label=f"{self.label}^dagger",
            dimension=self.dimension,
            matrix=self.matrix.conj().T,
        )


def _hadamard_matrix(dimension: int) -> np.ndarray:
    single = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    matrix = np.ones((1, 1), dtype=complex)
    for _ in range(dimension.bit_length() - 1):
        matrix = np.kron(matrix, single)
    return matrix


@lru_cache(maxsize=16)
def hadamard_unitary(dimension: int) -> Unitary:
    """H tensored k times on a register of dimension 2^k."""
    if not is_power_of_two(dimension) or dimension < 2:
        raise UnsupportedOperationError(
            f"Hadamard layer needs a power-of-2 register, got dimension {dimension}"
        )
    return Unitary(label=f"H^{dimension.bit_length() - 1}", dimension=dimension, matrix=_hadamard_matrix(dimension))


def _dft_matrix(s: int) -> np.ndarray:
    rows, columns = np.meshgrid(np.arange(s), np.arange(s), indexing="ij")
    exponent = (rows * columns) % s
    return np.exp(2j * np.pi * exponent / s) / np.sqrt(s)


@lru_cache(maxsize=16)
def qft_unitary(s: int) -> Unitary:
    """Discrete Fourier transform mod s with entries e^{2 pi i x y / s} / sqrt(s)."""
    if s < 2:
        raise UnsupportedOperationError(f"QFT needs s >= 2, got {s}")
    return Unitary(label=f"QFT_{s}", dimension=s, matrix=_dft_matrix(s))


def oracle_xor_unitary(f: TruthTable, layout: RegisterLayout) -> Unitary:
    """|x>|y> -> |x>|y XOR f(x)> as a permutation of the composite basis."""
    if layout.register_count != 2:
        raise DimensionMismatchError("Oracle layout registers", 2, layout.register_count)
    input_dim, output_dim = layout.register_dims
    if f.domain_size != input_dim:
        raise DimensionMismatchError("Oracle input register", f.domain_size, input_dim)
    if f.codomain_size != output_dim:
        raise DimensionMismatchError("Oracle output register", f.codomain_size, output_dim)
    if not is_power_of_two(output_dim):
        raise UnsupportedOperationError(
            f"XOR oracle needs a power-of-2 output register, got dimension {output_dim}"
        )
    x = np.arange(input_dim)[:, None]
    y = np.arange(output_dim)[None, :]
    values = np.asarray(f.values, dtype=np.int64)[:, None]
    permutation = (x * output_dim + (y ^ values)).reshape(-1)
    return Unitary(label="U_f", dimension=layout.total_dimension, permutation=permutation)


def oracle_modmul_unitary(a: int, modulus: int, layout: RegisterLayout) -> Unitary:
    """
    |x>|0> -> |x>|a^x mod N>, extended to a permutation of the whole space.

    For y < N the labels 0 and 1 are swapped and the result is multiplied by
    the unit a^x mod N, so |x>|0> -> |x>|a^x>, |x>|1> -> |x>|0> and every other
    y < N goes to y * a^x mod N. Labels y >= N are left alone.
    """
    if math.gcd(a, modulus) != 1:
        raise NotCoprimeError(a, modulus)
    if layout.register_count != 2:
        raise DimensionMismatchError("Oracle layout registers", 2, layout.register_count)
    input_dim, output_dim = layout.register_dims
    if output_dim < modulus:
        raise DimensionMismatchError("Output register for modulus", modulus, output_dim)
    powers = np.array([pow(a, x, modulus) for x in range(input_dim)], dtype=np.int64)[:, None]
    x = np.arange(input_dim, dtype=np.int64)[:, None]
    y = np.arange(output_dim, dtype=np.int64)[None, :]
    swapped = np.where(y == 0, 1, np.where(y == 1, 0, y))
    targets = np.where(y < modulus, (swapped * powers) % modulus, y)
    permutation = (x * output_dim + targets).reshape(-1)
    return Unitary(label=f"U_{a}^x_mod_{modulus}", dimension=layout.total_dimension, permutation=permutation)


def apply(
        u: Unitary,
        state: StateVector,
        register_index: Optional[int] = None
) -> StateVector:
    """Apply u to one register (identity elsewhere) or, with no index, to the whole space."""
    if register_index is None:
        if u.dimension != state.dimension:
            raise DimensionMismatchError(u.label, state.dimension, u.dimension)
        matrix = state.amplitudes.reshape(state.dimension, 1)
        return StateVector(
            amplitudes=_apply_to_rows(u, matrix).reshape(-1),
            layout=state.layout,
        )
    target_dim = state.layout.dimension(register_index)
    if u.dimension != target_dim:
        raise DimensionMismatchError(u.label, target_dim, u.dimension)
    tensor = np.moveaxis(state.tensor(), register_index, 0)
    moved_shape = tensor.shape
    updated = _apply_to_rows(u, tensor.reshape(target_dim, -1)).reshape(moved_shape)
    return StateVector(
        amplitudes=np.moveaxis(updated, 0, register_index).reshape(-1),
        layout=state.layout,
    )


def _apply_to_rows(u: Unitary, matrix: np.ndarray) -> np.ndarray:
    if u.permutation is not None:
        result = np.empty_like(matrix)
        result[u.permutation] = matrix
        return result
    # only columns with support need the dense product
    occupied = np.flatnonzero(np.any(matrix != 0, axis=0))
    if occupied.size == matrix.shape[1]:
        return u.matrix @ matrix
    result = np.zeros((u.dimension, matrix.shape[1]), dtype=complex)
    result[:, occupied] = u.matrix @ matrix[:, occupied]
    return result


def hadamard_layer(state: StateVector, register_index: int) -> StateVector:
    return apply(hadamard_unitary(state.layout.dimension(register_index)), state, register_index)
