"""Finite ordinal sets and canonical decompositions.

A finite ordinal set is a strictly increasing tuple. Ordinals of the omega
universe are ints; the forcing lab uses ``ExtOrdinal`` pairs, which compare
lexicographically and therefore work with the same helpers.
"""

from typing import Any, Iterable, List, Sequence, Tuple

from pydantic import BaseModel, Field, field_validator

FinOrdSet = Tuple[Any, ...]


def fin_ord_set(elements: Iterable[Any]) -> FinOrdSet:
    """Sorted, de-duplicated tuple of the given ordinals."""
    return tuple(sorted(set(elements)))


def parse_int_set(text: str) -> Tuple[int, ...]:
    """Parse ``"0,2,5"`` into a finite ordinal set."""
    parts = [part.strip() for part in text.split(",") if part.strip()]
    try:
        values = [int(part) for part in parts]
    except ValueError:
        raise ValueError(f"Not a comma separated list of naturals: {text!r}") from None
    if any(value < 0 for value in values):
        raise ValueError(f"Ordinals must be non-negative: {text!r}")
    return fin_ord_set(values)


def is_initial_segment(a: Sequence[Any], b: Sequence[Any]) -> bool:
    """A ⊑ B: A is an initial segment of B."""
    return len(a) <= len(b) and tuple(b[: len(a)]) == tuple(a)


def image(a: Sequence[Any], positions: Iterable[int]) -> FinOrdSet:
    """A[S] = {A(i) : i in S}."""
    return tuple(a[i] for i in sorted(set(positions)))


def set_less(a: Sequence[Any], b: Sequence[Any]) -> bool:
    """A < B: every element of A lies below every element of B."""
    if not a or not b:
        return True
    return a[-1] < b[0]


def increasing_bijection(source: Sequence[Any], target: Sequence[Any]) -> dict:
    """The increasing bijection between two sets of equal size."""
    if len(source) != len(target):
        raise ValueError("increasing bijection needs sets of equal size")
    return dict(zip(source, target))


def below(a: Sequence[Any], bound: Any) -> FinOrdSet:
    """A ∩ bound."""
    return tuple(x for x in a if x < bound)


def common_prefix_length(a: Sequence[Any], b: Sequence[Any]) -> int:
    """Length of the longest common initial segment."""
    size = 0
    for x, y in zip(a, b):
        if x != y:
            break
        size += 1
    return size


class Decomposition(BaseModel):
    """Canonical decomposition of a member of positive rank."""

    pieces: List[Tuple[int, ...]] = Field(..., description="Pieces F_0..F_{n-1}")
    root: Tuple[int, ...] = Field(..., description="Common root R(F)")

    model_config = {
        "json_schema_extra": {
            "example": {"pieces": [[0, 1], [0, 2], [0, 3]], "root": [0]},
        }
    }

    @field_validator("pieces")
    @classmethod
    def validate_pieces(cls, v):
        if len(v) < 2:
            raise ValueError("A decomposition has at least two pieces")
        sizes = {len(piece) for piece in v}
        if len(sizes) != 1:
            raise ValueError("Pieces of a decomposition have equal size")
        return v

    def union(self) -> Tuple[int, ...]:
        return fin_ord_set(x for piece in self.pieces for x in piece)

    def piece_of(self, value: int) -> int:
        """Index of the piece holding ``value`` outside the root, or -1."""
        if value in self.root:
            return -1
        for index, piece in enumerate(self.pieces):
            if value in piece:
                return index
        raise ValueError(f"{value} is not in the decomposed set")
