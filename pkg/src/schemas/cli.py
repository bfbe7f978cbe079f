import enum
import logging
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.oracles.generators import DEUTSCH_ORACLES


class SubcommandEnum(str, enum.Enum):
    DEUTSCH = "deutsch"
    CLEVE = "cleve"
    DJ = "dj"
    SIMON = "simon"
    SHOR = "shor"
    GEOMETRY = "geometry"
    REPRODUCE = "reproduce"


class OutputFormatEnum(str, enum.Enum):
    TEXT = "text"
    JSON = "json"


class DeutschStrategyEnum(str, enum.Enum):
    BOTH_REGISTERS = "both"
    OUTPUT_FIRST = "output-first"


class GeometryFamilyEnum(str, enum.Enum):
    DEUTSCH = "deutsch"
    SIMON = "simon"
    SHOR = "shor"


DJ_ORACLES = ("constant0", "constant1", "balanced")


class CliConfig(BaseModel):
    """One fully validated command line; checked before any simulation runs."""
    subcommand: SubcommandEnum
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    tolerance: float = Field(default=1e-9, gt=0)
    output_format: OutputFormatEnum = OutputFormatEnum.TEXT
    log_level: str = "INFO"
    n: Optional[int] = Field(default=None, ge=1, le=12)
    r: Optional[int] = Field(default=None, ge=1)
    a: Optional[int] = Field(default=None, ge=1)
    modulus: Optional[int] = Field(default=None, ge=2)
    s: Optional[int] = Field(default=None, ge=2)
    max_trials: Optional[int] = Field(default=None, ge=1)
    max_rounds: Optional[int] = Field(default=None, ge=1)
    oracle: Optional[str] = None
    oracle_file: Optional[Path] = None
    strategy: DeutschStrategyEnum = DeutschStrategyEnum.BOTH_REGISTERS
    exact_output_dim: bool = False
    family: Optional[GeometryFamilyEnum] = None

    model_config = ConfigDict(frozen=True)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, value: str) -> str:
        level = value.upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"unknown logging level '{value}'")
        return level

    @model_validator(mode="after")
    def validate_parameters(self) -> "CliConfig":
        command = self.subcommand
        if command in (SubcommandEnum.DEUTSCH, SubcommandEnum.CLEVE):
            self._require_oracle(DEUTSCH_ORACLES)
        elif command == SubcommandEnum.DJ:
            self._require("n")
            self._require_oracle(DJ_ORACLES)
        elif command == SubcommandEnum.SIMON:
            self._require("n")
            if self.oracle_file is None:
                self._require("r")
                if self.r >= 2 ** self.n:
                    raise ValueError(f"r: must be below 2^n = {2 ** self.n}")
        elif command == SubcommandEnum.SHOR:
            self._require("modulus")
            if self.a is not None and self.a >= self.modulus:
                raise ValueError(f"a: must be below N = {self.modulus}")
        elif command == SubcommandEnum.GEOMETRY:
            self._require("family")
            if self.family == GeometryFamilyEnum.SIMON:
                self._require("n")
            if self.family == GeometryFamilyEnum.SHOR:
                self._require("modulus")
                self._require("a")
        return self

    def _require(self, field: str) -> None:
        if getattr(self, field) is None:
            raise ValueError(f"{field}: required by the {self.subcommand.value} command")

    def _require_oracle(self, names) -> None:
        if self.oracle is None and self.oracle_file is None:
            raise ValueError(f"oracle: {self.subcommand.value} needs --oracle or --oracle-file")
        if self.oracle is not None and self.oracle not in names:
            raise ValueError(f"oracle: unknown oracle '{self.oracle}', expected one of {', '.join(names)}")
