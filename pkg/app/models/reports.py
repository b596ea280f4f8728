from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings


class ConvergenceRow(BaseModel):
    M: Optional[int] = None
    h: Optional[float] = None
    residual: float
    order: Optional[float] = None


class CheckReport(BaseModel):
    """One executed check. ``pass`` holds iff every residual is within tolerance and every exact flag is true."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default_factory=lambda: settings.REPORT_SCHEMA_VERSION, alias="schema")
    check_name: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    residuals: Dict[str, float] = Field(default_factory=dict)
    exact: Dict[str, bool] = Field(default_factory=dict)
    tolerance: float
    passed: bool = Field(alias="pass")
    seed: int
    wall_time_ms: float = 0.0
    details: Dict[str, Any] = Field(default_factory=dict)

    def payload(self, include_timing: bool = True) -> Dict[str, Any]:
        exclude = None if include_timing else {"wall_time_ms"}
        return self.model_dump(by_alias=True, exclude=exclude)


class SuiteRow(BaseModel):
    check_name: str
    parameters: str
    passed: bool
    worst_residual: Optional[float] = None
    wall_time_ms: float


class SuiteReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default_factory=lambda: settings.REPORT_SCHEMA_VERSION, alias="schema")
    profile: str
    seed: int
    passed: bool = Field(alias="pass")
    failing: List[str] = Field(default_factory=list)
    reports: List[CheckReport] = Field(default_factory=list)

    def payload(self, include_timing: bool = True) -> Dict[str, Any]:
        exclude = None if include_timing else {"reports": {"__all__": {"wall_time_ms"}}}
        return self.model_dump(by_alias=True, exclude=exclude)


class CheckInfo(BaseModel):
    name: str
    module: str
    description: str
    tolerance: float
    profiles: List[str]
    parameters: Dict[str, Any]


class RunCheckRequest(BaseModel):
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)


class SuiteRequest(BaseModel):
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
