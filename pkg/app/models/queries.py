"""Query and run parameter models for the scan and CLI layers."""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from .types import PartitionSpec


class CaptureQuery(BaseModel):
    """Finite-window search for captured subfamilies."""

    family: List[Tuple[int, ...]] = Field(..., description="Candidate finite sets")
    n: int = Field(..., description="Size of captured subfamilies")
    partition: Optional[PartitionSpec] = Field(default=None, description="Level partition")
    cell: Optional[int] = Field(default=None, description="Cell the level must lie in")
    k_min: int = Field(default=0, description="Levels must exceed this bound")
    window: int = Field(..., description="Ordinal bound N")

    model_config = {
        "json_schema_extra": {
            "example": {"family": [[1], [2], [3]], "n": 3, "window": 4},
        }
    }

    @field_validator("family", mode="before")
    @classmethod
    def normalize_family(cls, v):
        family = []
        for member in v:
            values = tuple(sorted(set(int(x) for x in member)))
            if not values:
                raise ValueError("Family members must be nonempty")
            family.append(values)
        return family

    @field_validator("n")
    @classmethod
    def validate_n(cls, v):
        if v < 1:
            raise ValueError("Captured subfamilies have at least one member")
        return v

    def model_post_init(self, __context):
        for member in self.family:
            if member[-1] >= self.window or member[0] < 0:
                raise ValueError(f"Family member {list(member)} leaves the window [0, {self.window})")


class CaptureHit(BaseModel):
    """One captured subfamily: level, capturing set and family indices in piece order."""

    level: int
    F: Tuple[int, ...]
    indices: Tuple[int, ...]


class RunConfig(BaseModel):
    """Resolved CLI parameters."""

    type_source: str = Field(default="tstar", description="Builtin name or JSON path")
    window: int = Field(default=0, description="Ordinal window; 0 uses suite defaults")
    depth: int = Field(default=3, description="Truncation level")
    output_format: Literal["json", "csv", "dot", "text"] = Field(default="json")
    suites: List[str] = Field(default_factory=list)

    @field_validator("window", "depth")
    @classmethod
    def validate_budget(cls, v):
        if v < 0:
            raise ValueError("Budgets must be non-negative")
        return v
