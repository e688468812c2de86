"""Closure oracles over ω·b: the omega block and the fragments stacked on it.

Every universe shares the integer scheme of its type; a fragment reads its
fresh block through the increasing enumeration of its strongest condition.
"""

from abc import ABC, abstractmethod
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

from ...models.config import ForcingConfig
from ...models.errors import (
    DemandUnsatisfiable,
    NotMember,
    NoWitnessInBudget,
    PreconditionViolation,
    ScanBudgetExceeded,
)
from ...models.forcing import ExtOrdinal, OrdSet
from ...utils.logging import LoggerMixin
from ..ordinal_metrics import MetricView
from ..scheme_engine import SchemeView


def lift(s: Sequence[int], block: int = 0) -> OrdSet:
    return tuple(ExtOrdinal(block, x) for x in s)


def positions(sub: Sequence[ExtOrdinal], whole: Sequence[ExtOrdinal]) -> Optional[Tuple[int, ...]]:
    """Indices of ``sub`` inside ``whole``, or None when sub is not contained."""
    index = {x: i for i, x in enumerate(whole)}
    try:
        return tuple(index[x] for x in sub)
    except KeyError:
        return None


def is_interval(values: Sequence[int]) -> bool:
    """Whether a sorted set of naturals is a block of consecutive numbers."""
    return not values or values[-1] - values[0] + 1 == len(values)


class Universe(LoggerMixin, ABC):
    """A construction scheme over ω·blocks queried through closures."""

    def __init__(self, scheme: SchemeView, config: Optional[ForcingConfig] = None):
        self.scheme = scheme
        self.config = config or ForcingConfig()

    # Type parameters

    def m(self, k: int) -> int:
        return self.scheme.m(k)

    def n(self, k: int) -> int:
        return self.scheme.n(k)

    def r(self, k: int) -> int:
        return self.scheme.r(k)

    def d(self, k: int) -> int:
        return self.scheme.d(k)

    @property
    @abstractmethod
    def blocks(self) -> int:
        """The universe is ω·blocks."""

    @property
    def top(self) -> ExtOrdinal:
        return ExtOrdinal.limit(self.blocks)

    @property
    def cache_size(self) -> int:
        return self.scheme.cache_size

    @cached_property
    def metrics(self) -> MetricView:
        return MetricView(self)

    # Oracle

    @abstractmethod
    def closure(self, beta: ExtOrdinal, k: int) -> OrdSet:
        """(β)_k."""

    @abstractmethod
    def universe_level(self, beta: ExtOrdinal) -> int:
        """A level past which ρ queries against β need not look."""

    @abstractmethod
    def is_member(self, s: Sequence[ExtOrdinal]) -> bool:
        """Membership among the sets the universe knows."""

    @abstractmethod
    def ih1_witness(self, A: Sequence[ExtOrdinal], alpha: ExtOrdinal) -> OrdSet:
        """Some member F with A ⊆ F_0 and F ∩ α = R(F)."""

    @abstractmethod
    def member_containing(self, beta: ExtOrdinal, l: int) -> OrdSet:
        """Some rank-l member containing β."""

    @abstractmethod
    def members_of_rank(self, l: int, bound: Optional[int] = None) -> Iterator[OrdSet]:
        """Rank-l members, the omega block cut at offset ``bound``."""

    # Derived structure

    def closure_minus(self, beta: ExtOrdinal, k: int) -> OrdSet:
        return self.closure(beta, k)[:-1]

    def position(self, beta: ExtOrdinal, k: int) -> int:
        """|(β)^-_k|."""
        return len(self.closure(beta, k)) - 1

    def rank_of(self, F: Sequence[ExtOrdinal]) -> int:
        """Rank of a member.

        Raises:
            NotMember: F is not a member.
        """
        if not self.is_member(F):
            raise NotMember(f"{[str(x) for x in F]} is not a member", set=[str(x) for x in F])
        return self.scheme.rank_of_size(len(F))  # type: ignore[return-value]

    def root(self, F: Sequence[ExtOrdinal]) -> OrdSet:
        k = self.scheme.rank_of_size(len(F))
        return tuple(F[: self.r(k)]) if k else ()  # type: ignore[arg-type]

    def pieces(self, F: Sequence[ExtOrdinal]) -> List[OrdSet]:
        """F_0, ..., F_{n-1} of a member of positive rank (unchecked)."""
        k = self.scheme.rank_of_size(len(F))
        r, d = self.r(k), self.d(k)  # type: ignore[arg-type]
        root = tuple(F[:r])
        return [root + tuple(F[r + d * i : r + d * (i + 1)]) for i in range(self.n(k))]  # type: ignore[arg-type]

    def sub_members(self, F: Sequence[ExtOrdinal], k: int) -> List[OrdSet]:
        """Rank-k members contained in the member F, lexicographically."""
        l = self.scheme.rank_of_size(len(F))
        if l is None or k > l:
            return []
        inside = [s for s in self.scheme.finite_scheme(l) if len(s) == self.m(k)]
        return sorted(tuple(F[p] for p in s) for s in inside)

    def captures_points(self, G: Sequence[ExtOrdinal], C: Sequence[ExtOrdinal]) -> bool:
        """Whether G captures the singletons of C, in increasing order."""
        k = self.scheme.rank_of_size(len(G))
        if not C or not k or len(C) > self.n(k):
            return False
        pieces = self.pieces(G)
        r = self.r(k)
        base = pieces[0]
        if C[0] not in base:
            return False
        offset = base.index(C[0])
        if offset < r:
            return False
        return all(pieces[i][offset] == c for i, c in enumerate(C))

    def scan(self, candidates: Iterator[OrdSet], scan_budget: Optional[int] = None) -> Iterator[OrdSet]:
        """Yield candidates, failing once the scan budget is exhausted."""
        budget = scan_budget or self.config.scan_budget
        for count, F in enumerate(candidates, start=1):
            if count > budget:
                raise ScanBudgetExceeded(
                    f"scan visited more than {budget} sets", budget=budget
                )
            yield F


class BaseUniverse(Universe):
    """The scheme over ω seen as block 0."""

    @property
    def blocks(self) -> int:
        return 1

    def _offset(self, beta: ExtOrdinal) -> int:
        if beta.block != 0:
            raise DemandUnsatisfiable(f"{beta} lies outside ω", beta=str(beta))
        return beta.offset

    def closure(self, beta: ExtOrdinal, k: int) -> OrdSet:
        return lift(self.scheme.closure(self._offset(beta), k))

    def universe_level(self, beta: ExtOrdinal) -> int:
        return self.scheme.universe_level(self._offset(beta))

    def is_member(self, s: Sequence[ExtOrdinal]) -> bool:
        if any(x.block != 0 for x in s):
            return False
        return self.scheme.is_member([x.offset for x in s])

    def ih1_witness(self, A: Sequence[ExtOrdinal], alpha: ExtOrdinal) -> OrdSet:
        """m_k for the least k >= 1 with r_k = α and m_{k-1} > max A.

        Raises:
            PreconditionViolation: some ordinal lies outside ω.
            NoWitnessInBudget: no such k up to the witness level budget.
        """
        if alpha.block != 0 or any(x.block != 0 for x in A):
            raise PreconditionViolation(
                "the omega universe only holds naturals",
                alpha=str(alpha),
                A=[str(x) for x in A],
            )
        top = max((x.offset for x in A), default=-1)
        for k in range(1, self.config.witness_level_budget + 1):
            if self.m(k - 1) > self.scheme.config.element_budget:
                break
            if self.r(k) == alpha.offset and self.m(k - 1) > top:
                self.log_debug("Found IH1 witness", k=k, alpha=alpha.offset)
                return lift(range(self.m(k)))
        raise NoWitnessInBudget(
            f"no level <= {self.config.witness_level_budget} has r_k = {alpha.offset} above max A",
            alpha=str(alpha),
            budget=self.config.witness_level_budget,
        )

    def member_containing(self, beta: ExtOrdinal, l: int) -> OrdSet:
        return lift(self.scheme.member_of_rank_containing(self._offset(beta), l))

    def members_of_rank(self, l: int, bound: Optional[int] = None) -> Iterator[OrdSet]:
        N = bound or self.config.scan_window
        for s in self.scheme.elements_of_rank_within(l, N):
            yield lift(s)


def interval_lemma_failures(scheme: SchemeView, top: int) -> List[Tuple[Tuple[int, ...], int]]:
    """(G, α) with (G ∩ (α+1)) ∪ [α, α + |G ∖ α|) outside the scheme, for G over m_top."""
    failures = []
    for G in scheme.level_sets(top):
        for alpha in G:
            head = [x for x in G if x < alpha]
            tail = len(G) - len(head)
            candidate = tuple(head) + tuple(range(alpha, alpha + tail))
            if not scheme.is_member(candidate):
                failures.append((G, alpha))
    return failures
