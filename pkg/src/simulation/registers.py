import math
from typing import Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from src.config import get_settings
from src.exceptions.simulation import (
    CompositeDimensionLimitError,
    DimensionMismatchError,
    RegisterLabelError,
    UnsupportedOperationError,
)


def is_power_of_two(value: int) -> bool:
    return value >= 1 and value & (value - 1) == 0


def smallest_power_of_two_at_least(value: int) -> int:
    power = 1
    while power < value:
        power <<= 1
    return power


class RegisterLayout(BaseModel):
    """
    Dimensions of a composite register space, input register first.

    Composite indices are row-major: for two registers,
    ``composite = input_index * output_dim + output_index``.
    """
    register_dims: Tuple[int, ...]

    model_config = ConfigDict(frozen=True)

    @field_validator("register_dims")
    @classmethod
    def validate_register_dims(cls, dims: Tuple[int, ...]) -> Tuple[int, ...]:
        if not dims:
            raise ValueError("A layout needs at least one register")
        for dim in dims:
            if dim < 2:
                raise ValueError(f"Register dimension {dim} is smaller than 2")
        total = math.prod(dims)
        limit = get_settings().MAX_COMPOSITE_DIMENSION
        if total > limit:
            raise CompositeDimensionLimitError(total, limit)
        return dims

    @property
    def total_dimension(self) -> int:
        return math.prod(self.register_dims)

    @property
    def register_count(self) -> int:
        return len(self.register_dims)

    def dimension(self, register_index: int) -> int:
        self.check_register(register_index)
        return self.register_dims[register_index]

    def check_register(self, register_index: int) -> None:
        if not 0 <= register_index < len(self.register_dims):
            raise UnsupportedOperationError(
                f"Register {register_index} does not exist in a "
                f"{len(self.register_dims)}-register layout"
            )

    def composite_index(self, labels: Tuple[int, ...]) -> int:
        labels = tuple(labels)
        if len(labels) != len(self.register_dims):
            raise DimensionMismatchError("Register labels", len(self.register_dims), len(labels))
        index = 0
        for register_index, (label, dim) in enumerate(zip(labels, self.register_dims)):
            if not 0 <= label < dim:
                raise RegisterLabelError(register_index, label, dim)
            index = index * dim + label
        return index

    def register_labels(self, composite: int) -> Tuple[int, ...]:
        if not 0 <= composite < self.total_dimension:
            raise RegisterLabelError(-1, composite, self.total_dimension)
        labels = []
        for dim in reversed(self.register_dims):
            composite, label = divmod(composite, dim)
            labels.append(label)
        return tuple(reversed(labels))


def two_register_layout(input_dim: int, output_dim: int) -> RegisterLayout:
    return RegisterLayout(register_dims=(input_dim, output_dim))
