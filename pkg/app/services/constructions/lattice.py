"""The lower semi-lattice {S_x} ⊆ P(ω) built over a binary type.

Level k holds a family {S^k_x : x ∈ A_k = m_k × 2^k} of subsets of
N_k = ⋃_{i<=k} U_i, where U_0 = {(0, 0, 0)} and U_k = {k} × m_k × 2^{k-1}.
"""

from itertools import combinations
from typing import Dict, FrozenSet, List, Tuple

from ...models.constructions import Point, TruncatedSet
from ...models.errors import BudgetExceeded
from .base import ConstructionBase

Index = Tuple[int, int]
Family = Dict[Index, FrozenSet[Point]]


class LatticeService(ConstructionBase):
    def __init__(self, scheme, metrics=None):
        super().__init__(scheme, metrics)
        self._levels: Dict[int, Family] = {0: {(0, 0): frozenset({(0, 0, 0)})}}

    def phi(self, k: int, x: Index) -> Index:
        """φ_k: A_k -> A_{k+1}."""
        a, b = x
        r = self.scheme.r(k + 1)
        return x if a < r else (a + self.scheme.m(k) - r, b)

    def lattice_level(self, k: int) -> Family:
        """{S^k_x : x ∈ A_k}.

        Raises:
            NonBinaryType: the type branches into more than two pieces somewhere.
            BudgetExceeded: |A_k| exceeds the element budget.
        """
        self.require_binary("Suslin lattice")
        cached = self._levels.get(k)
        if cached is not None:
            return cached
        size = self.scheme.m(k) << k
        if size > self.scheme.config.element_budget:
            raise BudgetExceeded(
                f"level {k} of the lattice has {size} sets",
                k=k,
                budget=self.scheme.config.element_budget,
            )
        family = self._step(self.lattice_level(k - 1), k - 1)
        self._levels[k] = family
        self.log_debug("Built lattice level", k=k, sets=len(family))
        return family

    def _step(self, lower: Family, k: int) -> Family:
        m, m_next, r = self.scheme.m(k), self.scheme.m(k + 1), self.scheme.r(k + 1)
        width = 1 << k
        family: Family = dict(lower)
        for a in range(m_next):
            for b in range(width, 2 * width):
                family[(a, b)] = frozenset((k + 1, i, b - width) for i in range(a + 1))
        for a in range(m, m_next):
            for b in range(width):
                z = lower[(a - (m - r), b)]
                D = [c for c in range(width) if lower[(r, c)] <= z]
                fresh = {(k + 1, i, c) for c in D for i in range(m)}
                family[(a, b)] = z | fresh
        return family

    def lattice_point(self, alpha: int, b: int, K: int) -> TruncatedSet:
        """S_{(α, b)} ∩ N_K = ⋃_{k<=K} S^k_{(|(α)^-_k|, b)} over the k with b < 2^k."""
        points: List[Point] = []
        for k in range(K + 1):
            if b < 1 << k:
                points.extend(self.lattice_level(k)[(self.position(alpha, k), b)])
        return TruncatedSet(elements=points, level=K)

    # Structural checks

    def rank_failures(self, k: int) -> List[Index]:
        """x = (a, b) whose set does not have rank a + 1 in (S^k, ⊆)."""
        family = self.lattice_level(k)
        order = sorted(family, key=lambda x: len(family[x]))
        rank: Dict[Index, int] = {}
        for x in order:
            below = [rank[y] for y in rank if family[y] < family[x]]
            rank[x] = 1 + max(below, default=0)
        return [x for x in order if rank[x] != x[0] + 1]

    def intersection_failures(self, k: int) -> List[Tuple[Index, Index]]:
        """Pairs whose intersection is neither empty nor a member of level k."""
        family = self.lattice_level(k)
        members = set(family.values())
        return [
            (x, y)
            for x, y in combinations(sorted(family), 2)
            if (family[x] & family[y]) and (family[x] & family[y]) not in members
        ]

    def restriction_failures(self, k: int) -> List[Index]:
        """x ∈ A_k with S^{k+1}_x ≠ S^k_x or S^{k+1}_{φ(x)} ∩ N_k ≠ S^k_x."""
        lower, upper = self.lattice_level(k), self.lattice_level(k + 1)
        failures = []
        for x, s in sorted(lower.items()):
            image = frozenset(p for p in upper[self.phi(k, x)] if p[0] <= k)
            if upper[x] != s or image != s:
                failures.append(x)
        return failures

    def embedding_failures(self, k: int) -> List[Tuple[Index, Index]]:
        """Pairs on which S^k_y -> S^{k+1}_{φ(y)} fails to preserve ⊆ or ∩."""
        lower, upper = self.lattice_level(k), self.lattice_level(k + 1)
        by_set = {s: x for x, s in lower.items()}
        failures = []
        for x, y in combinations(sorted(lower), 2):
            sx, sy = lower[x], lower[y]
            tx, ty = upper[self.phi(k, x)], upper[self.phi(k, y)]
            if (sx <= sy) != (tx <= ty) or (sy <= sx) != (ty <= tx):
                failures.append((x, y))
                continue
            meet = sx & sy
            if meet:
                image = upper[self.phi(k, by_set[meet])]
            else:
                image = frozenset()
            if tx & ty != image:
                failures.append((x, y))
        return failures
