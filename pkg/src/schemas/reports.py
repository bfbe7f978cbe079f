import enum
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


SCHEMA_VERSION = 1


class AlgorithmEnum(str, enum.Enum):
    DEUTSCH_XOR = "deutsch_xor"
    DEUTSCH_CLEVE = "deutsch_cleve"
    DEUTSCH_JOZSA = "deutsch_jozsa"
    SIMON = "simon"
    SHOR = "shor"
    GEOMETRY = "geometry"


class VerdictEnum(str, enum.Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"


class ShorFailureEnum(str, enum.Enum):
    DEGENERATE = "degenerate"
    ORDER_INVALID = "order_invalid"
    ODD = "odd"
    MINUS_ONE = "minus_one"
    TRIVIAL_FACTORS = "trivial_factors"


class MeasurementSummary(BaseModel):
    register_index: int
    outcome: int
    label: str
    probability: float

    model_config = ConfigDict(frozen=True)


class GeometryEntry(BaseModel):
    name: str
    dimension: int
    contains_final: bool
    basis_labels: Optional[List[int]] = None

    model_config = ConfigDict(frozen=True)


class ShorRound(BaseModel):
    round_index: int
    a: int
    c: Optional[int] = None
    candidate_r: Optional[int] = None
    lucky_gcd: bool = False
    order_valid: bool = False
    even: bool = False
    minus_one: bool = False
    half_power: Optional[int] = None
    gcd_minus: Optional[int] = None
    gcd_plus: Optional[int] = None
    factors: Optional[List[int]] = None
    success: bool = False
    failure_reason: Optional[ShorFailureEnum] = None


class RunReport(BaseModel):
    """Outcome of one algorithm run; serialized as the command-line JSON report."""
    schema_version: Literal[1] = SCHEMA_VERSION
    algorithm: AlgorithmEnum
    verdict: Union[VerdictEnum, int, List[int], None] = None
    conclusive: bool
    trace: List[MeasurementSummary] = Field(default_factory=list)
    geometry: List[GeometryEntry] = Field(default_factory=list)
    trials_used: int = 1
    seed: int
    rounds: List[ShorRound] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)


class PeriodSample(BaseModel):
    """One period-finding shot: the input-register outcome c and c/s in lowest terms."""
    a: int
    modulus: int
    s: int
    c: int
    probability: float
    numerator: int
    candidate_r: int
    degenerate: bool
    summary: MeasurementSummary


class ASurveyEntry(BaseModel):
    a: int
    order: int
    even: bool
    minus_one: bool
    usable: bool
    factors: Optional[List[int]] = None
