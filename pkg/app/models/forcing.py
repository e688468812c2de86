"""Models of the forcing lab: ordinals below ω·M, conditions, good sequences and reports."""

from typing import Any, Dict, List, Literal, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, field_validator


class ExtOrdinal(NamedTuple):
    """The ordinal ω·block + offset, compared lexicographically."""

    block: int
    offset: int

    def __str__(self) -> str:
        if self.block == 0:
            return str(self.offset)
        head = "ω" if self.block == 1 else f"ω·{self.block}"
        return head if self.offset == 0 else f"{head}+{self.offset}"

    def plus(self, n: int) -> "ExtOrdinal":
        return ExtOrdinal(self.block, self.offset + n)

    @property
    def is_limit(self) -> bool:
        return self.block > 0 and self.offset == 0

    @classmethod
    def limit(cls, block: int) -> "ExtOrdinal":
        """ω·block."""
        return cls(block, 0)

    @classmethod
    def parse(cls, text: str) -> "ExtOrdinal":
        """Parse ``"b:o"`` (ω·b + o) or a bare natural ``"o"``."""
        head, sep, tail = text.strip().partition(":")
        try:
            block, offset = (int(head), int(tail)) if sep else (0, int(head))
        except ValueError:
            raise ValueError(f"Not an ordinal of the form b:o or o: {text!r}") from None
        if block < 0 or offset < 0:
            raise ValueError(f"Ordinal coordinates must be non-negative: {text!r}")
        return cls(block, offset)

    def to_json(self) -> List[int]:
        return [self.block, self.offset]


OrdSet = Tuple[ExtOrdinal, ...]


def ord_set(elements: Sequence[Any]) -> OrdSet:
    """Sorted tuple of ExtOrdinals from ExtOrdinals, pairs or naturals."""
    values = set()
    for x in elements:
        if isinstance(x, int):
            values.add(ExtOrdinal(0, x))
        else:
            values.add(ExtOrdinal(*x))
    return tuple(sorted(values))


def ord_set_json(s: Sequence[ExtOrdinal]) -> List[List[int]]:
    return [x.to_json() for x in s]


class Condition(BaseModel):
    """A condition of the forcing over γ = ω·gamma_block."""

    elements: OrdSet = Field(..., description="Increasing ordinals of p")
    gamma_block: int = Field(..., description="γ = ω·gamma_block")

    model_config = {
        "frozen": True,
        "json_schema_extra": {
            "example": {"elements": [[0, 0], [1, 0], [1, 1]], "gamma_block": 1},
        },
    }

    @field_validator("elements", mode="before")
    @classmethod
    def normalize_elements(cls, v):
        return ord_set(v)

    @property
    def gamma(self) -> ExtOrdinal:
        return ExtOrdinal.limit(self.gamma_block)

    @property
    def below_gamma(self) -> OrdSet:
        """p ∩ γ."""
        return tuple(x for x in self.elements if x < self.gamma)

    @property
    def fresh(self) -> OrdSet:
        """p ∖ γ."""
        return tuple(x for x in self.elements if x >= self.gamma)

    def __len__(self) -> int:
        return len(self.elements)


class GoodEntry(BaseModel):
    """A pair (𝕀, z_𝕀): a block interval sequence of positions and its marker."""

    intervals: Tuple[Tuple[int, ...], ...] = Field(
        default=(), description="Increasing nonempty intervals of naturals"
    )
    z: int = Field(..., description="Marker z_𝕀")

    model_config = {
        "frozen": True,
        "json_schema_extra": {"example": {"intervals": [[3, 4], [6]], "z": 7}},
    }

    @field_validator("intervals", mode="before")
    @classmethod
    def validate_intervals(cls, v):
        intervals = []
        for block in v:
            values = tuple(sorted(set(int(x) for x in block)))
            if not values:
                raise ValueError("Intervals are nonempty")
            if values[-1] - values[0] + 1 != len(values):
                raise ValueError(f"{list(values)} is not an interval")
            if intervals and intervals[-1][-1] >= values[0]:
                raise ValueError("Intervals must be increasing")
            intervals.append(values)
        return tuple(intervals)

    def model_post_init(self, __context):
        if self.intervals and self.intervals[-1][-1] > self.z:
            raise ValueError(f"Marker {self.z} lies below the last interval")

    def is_good(self, t: int, m: int) -> bool:
        """(t, k)-goodness for m = m_k."""
        if not t <= self.z < m:
            return False
        return all(t <= block[0] and block[-1] < m for block in self.intervals)


class GoodSequence(BaseModel):
    """T = {(𝕀, z_𝕀)}; entries are kept in insertion order without duplicates."""

    entries: Tuple[GoodEntry, ...] = Field(default=())

    model_config = {
        "frozen": True,
        "json_schema_extra": {
            "example": {"entries": [{"intervals": [], "z": 2}, {"intervals": [[3]], "z": 4}]},
        },
    }

    @field_validator("entries", mode="before")
    @classmethod
    def deduplicate(cls, v):
        seen: List[Any] = []
        for entry in v:
            if entry not in seen:
                seen.append(entry)
        return tuple(seen)

    @classmethod
    def single(cls, z: int, intervals: Sequence[Sequence[int]] = ()) -> "GoodSequence":
        return cls(entries=(GoodEntry(intervals=intervals, z=z),))

    def is_good(self, t: int, m: int) -> bool:
        return bool(self.entries) and all(entry.is_good(t, m) for entry in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


DemandOp = Literal["contain", "root", "ih1", "ih2", "advance"]


class DemandRecord(BaseModel):
    """One line of a session's demand log."""

    op: DemandOp = Field(..., description="Dense set met by the demand")
    args: Dict[str, Any] = Field(default_factory=dict, description="JSON arguments")
    stage: int = Field(default=1, description="Stage the demand was applied to")
    chosen: List[List[int]] = Field(
        default_factory=list, description="Strongest condition after the demand"
    )
    witness: Optional[List[List[int]]] = Field(
        default=None, description="Member witnessing the demand, when one is recorded"
    )
    detail: Dict[str, Any] = Field(
        default_factory=dict, description="Derived values such as the level l and j"
    )

    model_config = {
        "json_schema_extra": {
            "example": {
                "op": "contain",
                "args": {"alpha": [0, 5]},
                "stage": 1,
                "chosen": [[0, 0], [0, 1], [1, 0], [1, 1]],
            }
        }
    }


class ProjectionResult(BaseModel):
    """π^{k,l}_ξ(𝕀) with one interval flag per entry."""

    sets: List[List[int]] = Field(default_factory=list)
    intervals: List[bool] = Field(default_factory=list)

    @property
    def in_bl(self) -> bool:
        """Membership in Bl(0, l)."""
        return all(self.intervals)


class Ih2Row(BaseModel):
    """The IH2 clauses at one level l."""

    l: int
    clause_a: bool = Field(..., description="|(β)_{l-1} ∩ δ| = r_l")
    clause_b: bool = Field(..., description="No C ⊆ D fully captured at rank l")
    j: int = Field(..., description="j(k, l, β, δ, T)")
    witness: bool = Field(..., description="The j-witness clause holds")

    @property
    def holds(self) -> bool:
        return self.clause_a and self.clause_b and self.witness


class Ih2Report(BaseModel):
    """Per-level IH2 rows for one (δ, β, k, T, D)."""

    delta: Optional[List[int]] = None
    beta: Optional[List[int]] = None
    k: int = 0
    vacuous: bool = Field(default=False, description="No limit below γ exists")
    rows: List[Ih2Row] = Field(default_factory=list)

    @property
    def passing_levels(self) -> List[int]:
        return [row.l for row in self.rows if row.holds]


class TransEquivReport(BaseModel):
    """Outcome of scanning (a) ⟺ (b) over a parameter grid."""

    checked: int = 0
    skipped: int = Field(default=0, description="Tuples needing closures the fragment lacks")
    both_true: int = 0
    both_false: int = 0
    counterexamples: List[Dict[str, Any]] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


class FragmentSnapshot(BaseModel):
    """Immutable view of one stage of the generic build."""

    stage: int
    gamma_block: int
    rank: int = Field(..., description="Rank of the strongest condition")
    chain_length: int
    strongest: List[List[int]]
    ih1_witnesses: List[Dict[str, Any]] = Field(default_factory=list)
