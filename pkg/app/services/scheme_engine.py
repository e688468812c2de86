"""The unique construction scheme over m_k and over omega.

Level l of the scheme over m_l consists of the top set m_l together with the
n_l block copies of the scheme over m_{l-1}. Block i is
[0, r_l) ∪ [r_l + d·i, r_l + d·(i+1)) with d = m_{l-1} - r_l, and the copy
map φ_i fixes positions below r_l and shifts the others by d·i.
"""

import threading
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from ..models.config import SchemeConfig
from ..models.errors import (
    LevelTooDeep,
    NotMember,
    NotSubscheme,
    PreconditionViolation,
    RankMismatch,
    RankZero,
)
from ..models.sets import Decomposition
from ..models.types import TypeSpec
from ..utils.logging import LoggerMixin
from .type_core import TypeTable

IntSet = Tuple[int, ...]


class SchemeView(LoggerMixin):
    """Lazily materialized, memoized view of the scheme of one type."""

    def __init__(self, spec: TypeSpec, config: Optional[SchemeConfig] = None):
        self.spec = spec
        self.config = config or SchemeConfig()
        self.table = TypeTable(spec)
        self._levels: Dict[int, FrozenSet[IntSet]] = {}
        self._within: Dict[Tuple[int, int, int], Tuple[IntSet, ...]] = {}
        self._lock = threading.Lock()
        self.closure = lru_cache(maxsize=self.config.cache_size)(self._closure)

    # Type parameters

    def m(self, k: int) -> int:
        return self.table.m(k)

    def n(self, k: int) -> int:
        return self.table.n(k)

    def r(self, k: int) -> int:
        return self.table.r(k)

    def d(self, k: int) -> int:
        return self.table.d(k)

    @property
    def cache_size(self) -> int:
        return self.config.cache_size

    @property
    def is_binary(self) -> bool:
        """Whether the type has n_k = 2 at every level."""
        return self.spec.n_rule == "constant" and self.spec.n_value == 2 and all(
            n == 2 for n, _ in self.spec.prefix
        )

    # Finite schemes

    def piece_map(self, k: int, i: int, position: int) -> int:
        """φ_i: position of m_{k-1} to its copy in block i of m_k."""
        r = self.r(k)
        return position if position < r else position + self.d(k) * i

    def finite_scheme(self, k: int) -> FrozenSet[IntSet]:
        """All members of the scheme over m_k.

        Raises:
            LevelTooDeep: the level would exceed the element budget.
        """
        if k in self._levels:
            return self._levels[k]
        below = self.finite_scheme(k - 1) if k > 0 else None
        with self._lock:
            if k in self._levels:
                return self._levels[k]
            if below is None:
                level: FrozenSet[IntSet] = frozenset({(0,)})
            else:
                n = self.n(k)
                estimate = 1 + n * len(below)
                if estimate > self.config.element_budget:
                    raise LevelTooDeep(
                        f"level {k} would hold up to {estimate} sets",
                        k=k,
                        budget=self.config.element_budget,
                    )
                r, d = self.r(k), self.d(k)
                members = {tuple(range(self.m(k)))}
                for i in range(n):
                    shift = d * i
                    for G in below:
                        members.add(tuple(x if x < r else x + shift for x in G))
                level = frozenset(members)
            self._levels[k] = level
        self.log_debug("Materialized level", k=k, sets=len(level))
        return level

    def level_sets(self, k: int) -> List[IntSet]:
        """Members of the scheme over m_k ordered by size, then lexicographically."""
        return sorted(self.finite_scheme(k), key=lambda s: (len(s), s))

    # Membership and structure

    def rank_of_size(self, size: int) -> Optional[int]:
        return self.table.level_of_size(size)

    def is_member(self, s: Sequence[int]) -> bool:
        """Decide membership in the scheme over omega by block descent."""
        cur = tuple(s)
        if not cur or any(x < 0 for x in cur) or list(cur) != sorted(set(cur)):
            return False
        k = self.rank_of_size(len(cur))
        if k is None:
            return False
        level = self.table.level_above(cur[-1], floor=k)
        while level > k:
            r, d = self.r(level), self.d(level)
            high = [x for x in cur if x >= r]
            block = (high[0] - r) // d if high else 0
            if any((x - r) // d != block for x in high):
                return False
            shift = d * block
            cur = tuple(x if x < r else x - shift for x in cur)
            level -= 1
        return cur == tuple(range(self.m(k)))

    def rank_of(self, s: Sequence[int]) -> int:
        """The k with |s| = m_k for a member s.

        Raises:
            NotMember: s is not in the scheme.
        """
        if not self.is_member(s):
            raise NotMember(f"{tuple(s)} is not a member", set=tuple(s))
        return self.rank_of_size(len(s))  # type: ignore[return-value]

    def pieces(self, F: Sequence[int]) -> List[IntSet]:
        """Canonical pieces of a member F of rank k >= 1 (unchecked)."""
        k = self.rank_of_size(len(F))
        r, d = self.r(k), self.d(k)  # type: ignore[arg-type]
        root = tuple(F[:r])
        return [root + tuple(F[r + d * i : r + d * (i + 1)]) for i in range(self.n(k))]  # type: ignore[arg-type]

    def decompose(self, F: Sequence[int]) -> Decomposition:
        """Canonical decomposition of F.

        Raises:
            NotMember: F is not in the scheme.
            RankZero: F is a singleton.
        """
        k = self.rank_of(F)
        if k == 0:
            raise RankZero(f"{tuple(F)} has rank 0", set=tuple(F))
        return Decomposition(pieces=self.pieces(F), root=tuple(F[: self.r(k)]))

    def root(self, F: Sequence[int]) -> IntSet:
        k = self.rank_of_size(len(F))
        return tuple(F[: self.r(k)]) if k else ()  # type: ignore[arg-type]

    def transport(self, F: Sequence[int], G: Sequence[int], s: Sequence[int]) -> IntSet:
        """h[s] for the increasing bijection h: F -> G.

        Raises:
            NotMember: F or G is not a member.
            RankMismatch: F and G have different ranks.
            NotSubscheme: s is not a member contained in F.
        """
        if self.rank_of(F) != self.rank_of(G):
            raise RankMismatch("transport needs members of equal rank", F=tuple(F), G=tuple(G))
        if not self.is_member(s) or not set(s) <= set(F):
            raise NotSubscheme(f"{tuple(s)} is not a member inside {tuple(F)}", set=tuple(s))
        h = dict(zip(F, G))
        return tuple(h[x] for x in s)

    def subsets_of_rank(self, F: Sequence[int], k: int) -> List[IntSet]:
        """Rank-k members contained in the member F, in lexicographic order."""
        l = self.rank_of_size(len(F))
        if l is None or k > l:
            return []
        positions = [s for s in self.finite_scheme(l) if len(s) == self.m(k)]
        return sorted(tuple(F[p] for p in s) for s in positions)

    # Enumeration within a bound

    def elements_of_rank_within(self, k: int, N: int) -> Iterator[IntSet]:
        """Every rank-k member inside [0, N), lexicographically.

        Raises:
            LevelTooDeep: the result would exceed the element budget.
        """
        if N <= 0:
            return iter(())
        l = 0
        while self.m(l) < N:
            l += 1
            if l > self.config.max_level + 64:
                raise LevelTooDeep(f"bound {N} needs too many levels", k=l)
        if k > l:
            return iter(())
        return iter(self._members_within(k, l, N))

    def _members_within(self, k: int, l: int, N: int) -> Tuple[IntSet, ...]:
        key = (k, l, N)
        cached = self._within.get(key)
        if cached is not None:
            return cached
        if l == k:
            result: Tuple[IntSet, ...] = (tuple(range(self.m(k))),) if self.m(k) <= N else ()
        else:
            r, d, m_prev = self.r(l), self.d(l), self.m(l - 1)
            found = set()
            for i in range(self.n(l)):
                if i > 0 and r + d * i >= N:
                    break
                bound = N if N <= r else min(m_prev, max(r, N - d * i))
                shift = d * i
                for G in self._members_within(k, l - 1, bound):
                    found.add(tuple(x if x < r else x + shift for x in G))
                if len(found) > self.config.element_budget:
                    raise LevelTooDeep(
                        f"more than {self.config.element_budget} rank-{k} sets below {N}",
                        k=k,
                        bound=N,
                    )
            result = tuple(sorted(found))
        with self._lock:
            self._within[key] = result
        return result

    # Closures

    def _descend(self, beta: int, k: int) -> Tuple[List[Tuple[int, int]], int]:
        """Block steps (r_l, shift) from the universe level down to k, and β's position in m_k."""
        top = self.table.level_above(beta, floor=k)
        steps = []
        position = beta
        for level in range(top, k, -1):
            r, d = self.r(level), self.d(level)
            block = 0 if position < r else (position - r) // d
            steps.append((r, d * block))
            position -= d * block
        return steps, position

    @staticmethod
    def _lift(steps: List[Tuple[int, int]], positions: range) -> IntSet:
        result = []
        for q in positions:
            for r, shift in reversed(steps):
                if q >= r:
                    q += shift
            result.append(q)
        return tuple(result)

    def _closure(self, beta: int, k: int) -> IntSet:
        """(β)_k = F ∩ (β+1) for any rank-k member F containing β.

        Raises:
            PreconditionViolation: β or k is negative.
        """
        if beta < 0 or k < 0:
            raise PreconditionViolation(
                f"closure needs naturals, got beta={beta}, k={k}", beta=beta, k=k
            )
        steps, position = self._descend(beta, k)
        return self._lift(steps, range(position + 1))

    def closure_minus(self, beta: int, k: int) -> IntSet:
        """(β)^-_k = F ∩ β."""
        return self.closure(beta, k)[:-1]

    def closure_size(self, beta: int, k: int) -> int:
        return len(self.closure(beta, k))

    def universe_level(self, beta: int) -> int:
        """Least l with β < m_l; closures at levels >= l are initial segments."""
        return self.table.level_above(beta)

    def member_of_rank_containing(self, beta: int, k: int) -> IntSet:
        """A canonical rank-k member containing β (image of m_k)."""
        steps, _ = self._descend(beta, k)
        return self._lift(steps, range(self.m(k)))
