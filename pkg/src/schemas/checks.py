from typing import List

from pydantic import BaseModel, Field

from src.schemas.reports import SCHEMA_VERSION


class CheckResult(BaseModel):
    check_id: str
    description: str
    passed: bool
    detail: str = ""


class ReproductionReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    seed: int
    tolerance: float
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]
