"""Pydantic models for configuration and request/response validation."""
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from services.settings import get_settings


class RunConfig(BaseModel):
    """Shared knobs of the CLI and the HTTP endpoints."""

    window: int = Field(default=32, ge=8)
    degree: int = Field(default=2, ge=2)
    backend: Literal["auto", "exact", "float"] = "auto"
    tolerance: float = Field(default=1e-12, gt=0)
    bound: int = Field(default=12, ge=1)
    seed: int = 0
    format: Literal["text", "json", "csv"] = "text"

    @classmethod
    def from_settings(cls, **overrides) -> "RunConfig":
        s = get_settings()
        values = {
            "window": s.default_window,
            "degree": s.default_degree,
            "tolerance": s.tolerance,
            "bound": s.default_bound,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @property
    def backend_override(self) -> Optional[str]:
        return None if self.backend == "auto" else self.backend


class IndexRequest(BaseModel):
    module: str
    unitary: str
    window: int = Field(default=32, ge=8)


class PairRequest(BaseModel):
    module: str
    # a named class ("P1", "U^-1", ...) or a serialized group-ring element
    element: Union[str, Dict[str, Any]]
    window: int = Field(default=32, ge=8)
    degree: int = Field(default=2, ge=2)
    backend: Literal["auto", "exact", "float"] = "auto"


class HomotopyRequest(BaseModel):
    window: int = Field(default=32, ge=8)
    t_grid: List[str] = ["0", "1/4", "1/2", "3/4", "1"]


class CyclicRequest(BaseModel):
    bound: Optional[int] = Field(default=None, ge=1)
    seed: int = 0
    count: Optional[int] = Field(default=None, ge=1)
    k: Optional[int] = None
    c_k: str = "0"


class PairingResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    module: str
    klass: str = Field(alias="class")
    value: int
    stabilized: bool
    window: int
    degrees: List[int] = []
    kernel_dims: Optional[List[int]] = None


class CheckResponse(BaseModel):
    check: str
    passed: bool
    detail: str = ""


class ModuleReportResponse(BaseModel):
    module: str
    window: int
    backend: str
    passed: bool
    checks: List[CheckResponse]
