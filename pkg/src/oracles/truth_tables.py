import json
import logging
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from src.exceptions.oracles import TruthTableError


logger = logging.getLogger(__name__)


class TruthTable(BaseModel):
    """An explicit total function {0..domain_size-1} -> {0..codomain_size-1}."""
    domain_size: int
    codomain_size: int
    values: Tuple[int, ...]

    model_config = ConfigDict(frozen=True)

    @field_validator("domain_size", "codomain_size")
    @classmethod
    def validate_size(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be a positive integer")
        return value

    @model_validator(mode="after")
    def validate_values(self) -> "TruthTable":
        if len(self.values) != self.domain_size:
            raise TruthTableError(
                "values",
                f"expected {self.domain_size} entries, got {len(self.values)}"
            )
        for x, value in enumerate(self.values):
            if not 0 <= value < self.codomain_size:
                raise TruthTableError(
                    "values",
                    f"entry {x} = {value} is outside the codomain [0, {self.codomain_size})"
                )
        return self

    def __call__(self, x: int) -> int:
        return self.values[x]


class PromiseKindEnum(str, Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"
    CONSTANT_OR_BALANCED = "constant_or_balanced"
    SIMON_PERIODIC = "simon_periodic"
    MODEXP = "modexp"


class PromiseTag(BaseModel):
    kind: PromiseKindEnum
    r: Optional[int] = None
    a: Optional[int] = None
    modulus: Optional[int] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_parameters(self) -> "PromiseTag":
        if self.kind == PromiseKindEnum.SIMON_PERIODIC and (self.r is None or self.r <= 0):
            raise ValueError("simon_periodic promise needs a nonzero period r")
        if self.kind == PromiseKindEnum.MODEXP and (self.a is None or self.modulus is None):
            raise ValueError("modexp promise needs both a and modulus")
        return self


def _first_error_field(error: ValidationError) -> str:
    for item in error.errors():
        if item.get("loc"):
            return ".".join(str(part) for part in item["loc"])
    return "values"


def load_truth_table(path: str | Path) -> TruthTable:
    """
    Read a TruthTable from JSON of the form
    {"domain_size": int, "codomain_size": int, "values": [int]}.

    :raises TruthTableError: naming the offending field when the file is malformed.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"Could not read oracle file {path}: {e}")
        raise TruthTableError("file", str(e)) from e
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as e:
        raise TruthTableError("file", f"not valid JSON ({e.msg})") from e
    if not isinstance(payload, dict):
        raise TruthTableError("file", "top level must be a JSON object")
    try:
        return TruthTable.model_validate(payload)
    except TruthTableError:
        raise
    except ValidationError as e:
        field = _first_error_field(e)
        message = e.errors()[0]["msg"]
        logger.warning(f"Rejected oracle file {path}: {field}: {message}")
        raise TruthTableError(field, message) from e
