"""Result models of the derived constructions."""

from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, Field, field_validator

Point = Tuple[int, ...]


class TruncatedSet(BaseModel):
    """Finite part of a set of level-tagged points, cut at level K.

    Every point is a tuple whose first coordinate is the level k of the block
    N_k it belongs to.
    """

    elements: Tuple[Point, ...] = Field(default=(), description="Sorted points")
    level: int = Field(..., description="Truncation level K")

    model_config = {
        "frozen": True,
        "json_schema_extra": {
            "example": {"elements": [[1, 0, 0], [2, 1, 0], [2, 1, 1]], "level": 2},
        },
    }

    @field_validator("elements", mode="before")
    @classmethod
    def normalize_elements(cls, v):
        return tuple(sorted({tuple(int(x) for x in point) for point in v}))

    def model_post_init(self, __context):
        for point in self.elements:
            if not point or point[0] > self.level:
                raise ValueError(f"Point {list(point)} lies above level {self.level}")

    def at_level(self, k: int) -> Tuple[Point, ...]:
        return tuple(p for p in self.elements if p[0] == k)

    def levels(self) -> Tuple[int, ...]:
        return tuple(sorted({p[0] for p in self.elements}))

    def intersection(self, other: "TruncatedSet") -> "TruncatedSet":
        common = set(self.elements) & set(other.elements)
        return TruncatedSet(elements=common, level=min(self.level, other.level))

    def difference(self, other: "TruncatedSet") -> "TruncatedSet":
        return TruncatedSet(
            elements=set(self.elements) - set(other.elements), level=self.level
        )

    def __len__(self) -> int:
        return len(self.elements)


class TruncatedFunction(BaseModel):
    """A function on a truncated set of points."""

    values: Dict[Point, int] = Field(default_factory=dict)
    level: int = Field(..., description="Truncation level K")

    def domain(self) -> TruncatedSet:
        return TruncatedSet(elements=list(self.values), level=self.level)

    def fiber(self, value: int) -> Tuple[Point, ...]:
        return tuple(sorted(p for p, v in self.values.items() if v == value))

    def to_rows(self) -> List[List[int]]:
        return [list(point) + [value] for point, value in sorted(self.values.items())]


class AronszajnNode(BaseModel):
    """A node f =^* ρ_β of the special tree with its antichain label."""

    beta: int = Field(..., description="dom(f) = β + 1")
    table: Tuple[int, ...] = Field(..., description="f(ξ) for ξ <= β")
    k: int = Field(..., description="Minimal level k_f")
    s: int = Field(..., description="|(β)_{k_f}|")

    model_config = {
        "json_schema_extra": {
            "example": {"beta": 3, "table": [1, 2, 2, 0], "k": 0, "s": 1},
        }
    }


class Allocation(BaseModel):
    """One step of the oscillation partition allocator: [low, high] ⊆ P_n."""

    n: int
    k: int
    low: int
    high: int


class ChiReport(BaseModel):
    """Membership of a finite condition in the χ posets, read up to level K."""

    level: int = Field(..., description="Fibers were intersected up to this level")
    truncated: bool = Field(default=True, description="Answers hold for levels <= K only")
    compatible: bool = Field(..., description="Whether every coordinate is a condition")
    coordinates: List[Dict[str, Any]] = Field(
        default_factory=list, description="Per-coordinate verdicts"
    )
