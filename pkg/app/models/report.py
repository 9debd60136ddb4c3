"""
Run report models shared by every command.
Defines the JSON schema emitted with ``--json``.
"""
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, validator


class CheckResult(BaseModel):
    """Outcome of a single named verification."""

    name: str = Field(..., description="Check identifier")
    passed: bool = Field(..., alias="pass", description="Whether the check succeeded")
    detail: str = Field("", description="Human-readable detail or witness")

    @validator("name")
    def validate_name(cls, v):
        """Validate the check name is not empty."""
        if not v.strip():
            raise ValueError("Check name cannot be empty")
        return v.strip()

    class Config:
        allow_population_by_field_name = True


class RunReport(BaseModel):
    """Report of one command invocation."""

    schema_version: str = Field(..., description="Report schema version")
    command: str = Field(..., description="Command echo")
    params: Dict[str, Any] = Field(default_factory=dict, description="Resolved parameters")
    seed: Optional[int] = Field(None, description="Sampling seed, when sampling was used")
    checks: List[CheckResult] = Field(default_factory=list, description="Per-check results")
    passed: bool = Field(..., alias="pass", description="True iff every check passed")
    wall_ms: Optional[int] = Field(None, description="Wall time in milliseconds, when recorded")
    timestamp: Optional[str] = Field(None, description="ISO timestamp, when recorded")

    @validator("passed")
    def validate_passed(cls, v, values):
        """Overall pass must agree with the individual checks."""
        checks = values.get("checks", [])
        if v != all(check.passed for check in checks):
            raise ValueError("Overall pass flag disagrees with the checks")
        return v

    class Config:
        allow_population_by_field_name = True

    @classmethod
    def from_checks(cls, schema_version: str, command: str, params: Dict[str, Any],
                    checks: List[CheckResult], seed: Optional[int] = None) -> "RunReport":
        return cls(
            schema_version=schema_version,
            command=command,
            params=params,
            seed=seed,
            checks=checks,
            passed=all(check.passed for check in checks),
        )

    def to_json(self) -> str:
        """Deterministic JSON: aliased keys, sorted, absent optionals dropped."""
        payload = self.dict(by_alias=True, exclude_none=True)
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
