"""Type sequences, schedule rules and partitions of the level set."""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

ScheduleKind = Literal["round_robin", "constant", "cycle"]
NRule = Literal["constant", "coherent_suslin", "entangled", "full_suslin", "independent"]
PartitionKind = Literal["single", "residue", "zero_r"]


class ScheduleRule(BaseModel):
    """Declarative rule extending the r-sequence past the prefix.

    ``round_robin`` emits the table 0,1,0,2,1,3,0,... with every entry
    repeated ``cells`` times in a row; ``constant`` repeats ``value``;
    ``cycle`` repeats ``values`` periodically.
    """

    kind: ScheduleKind = Field(default="round_robin", description="Rule name")
    cells: int = Field(default=1, description="Repetitions of each round-robin entry")
    value: int = Field(default=0, description="Value of a constant schedule")
    values: Tuple[int, ...] = Field(default=(), description="Period of a cycle schedule")

    model_config = {"frozen": True}

    @field_validator("cells")
    @classmethod
    def validate_cells(cls, v):
        if v < 1:
            raise ValueError("Round-robin cells must be at least 1")
        return v

    @field_validator("value")
    @classmethod
    def validate_value(cls, v):
        if v < 0:
            raise ValueError("Root sizes must be non-negative")
        return v

    @field_validator("values", mode="before")
    @classmethod
    def validate_values(cls, v):
        values = tuple(int(x) for x in v)
        if any(x < 0 for x in values):
            raise ValueError("Root sizes must be non-negative")
        return values


class TypeSpec(BaseModel):
    """Parameter sequence (m_k, n_k, r_k) of a construction scheme.

    ``prefix`` fixes (n_k, r_k) for k = 1..len(prefix); later levels take r_k
    from ``schedule`` and n_k from ``n_rule``. m is derived by the recurrence
    m_0 = 1, m_k = r_k + (m_{k-1} - r_k) * n_k.
    """

    name: str = Field(default="custom", description="Display name")
    prefix: Tuple[Tuple[int, int], ...] = Field(
        default=(), description="Explicit (n_k, r_k) pairs for k >= 1"
    )
    schedule: ScheduleRule = Field(default_factory=ScheduleRule)
    n_rule: NRule = Field(default="constant", description="Rule for n_k past the prefix")
    n_value: int = Field(default=2, description="n_k of the constant rule")
    declared_m: Optional[Tuple[int, ...]] = Field(
        default=None, description="Optional m_0.. values checked against the recurrence"
    )

    model_config = {
        "frozen": True,
        "json_schema_extra": {
            "example": {
                "name": "tstar",
                "prefix": [[2, 0], [3, 1], [2, 0], [2, 2], [2, 1], [2, 3]],
                "schedule": {"kind": "round_robin"},
            }
        },
    }

    @field_validator("prefix", mode="before")
    @classmethod
    def validate_prefix(cls, v):
        pairs = []
        for pair in v:
            n, r = (int(x) for x in pair)
            if n < 1:
                raise ValueError(f"Branching number must be positive, got {n}")
            if r < 0:
                raise ValueError(f"Root size must be non-negative, got {r}")
            pairs.append((n, r))
        return tuple(pairs)

    @field_validator("n_value")
    @classmethod
    def validate_n_value(cls, v):
        if v < 1:
            raise ValueError("Branching number must be positive")
        return v

    @classmethod
    def from_json_document(cls, document: dict) -> "TypeSpec":
        """Build a type from its JSON document."""
        return cls.model_validate(document)

    def to_json_document(self) -> dict:
        """Inverse of :meth:`from_json_document`."""
        return self.model_dump(mode="json")


class PartitionSpec(BaseModel):
    """Partition of the levels k >= 1 into cells."""

    kind: PartitionKind = Field(default="single", description="Partition rule")
    cell_count: int = Field(default=1, description="Number of cells")

    model_config = {"frozen": True}

    @field_validator("cell_count")
    @classmethod
    def validate_cell_count(cls, v):
        if v < 1:
            raise ValueError("A partition needs at least one cell")
        return v

    @classmethod
    def single(cls) -> "PartitionSpec":
        return cls(kind="single", cell_count=1)

    @classmethod
    def residue(cls, modulus: int) -> "PartitionSpec":
        """Cell of k is k mod ``modulus``."""
        return cls(kind="residue", cell_count=modulus)

    @classmethod
    def zero_r(cls) -> "PartitionSpec":
        """Cell 0 holds the levels with r_k = 0, cell 1 the rest."""
        return cls(kind="zero_r", cell_count=2)


class ClauseResult(BaseModel):
    """Outcome of one type clause."""

    clause: str = Field(..., description="Clause letter")
    passed: bool = Field(..., description="Whether the clause holds")
    k: Optional[int] = Field(default=None, description="First offending level")
    detail: str = Field(default="", description="Human readable explanation")


class TypeValidationReport(BaseModel):
    """Per-clause report of :func:`validate_type`."""

    type_name: str
    levels_checked: int
    clauses: List[ClauseResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(clause.passed for clause in self.clauses)

    def failed_clauses(self) -> List[str]:
        return [clause.clause for clause in self.clauses if not clause.passed]


class PartitionReport(BaseModel):
    """Certificate that every cell sees every root size infinitely often."""

    kind: PartitionKind
    cell_count: int
    compatible: bool
    witness: str = Field(default="", description="How compatibility was certified")
