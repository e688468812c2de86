"""Capturing and full capturing predicates with finite-window scans."""

from itertools import combinations
from typing import List, Optional, Sequence

from ..models.errors import NotMember
from ..models.queries import CaptureHit, CaptureQuery
from ..utils.logging import LoggerMixin
from .ordinal_metrics import MetricView
from .scheme_engine import SchemeView
from .type_core import cell_of


class CaptureService(LoggerMixin):
    """Decides whether members of the scheme replicate families across their pieces."""

    def __init__(self, scheme: SchemeView, metrics: Optional[MetricView] = None):
        self.scheme = scheme
        self.metrics = metrics or MetricView(scheme)

    def captures(self, F: Sequence[int], C: Sequence[Sequence[int]]) -> bool:
        """Whether F captures the ordered family C.

        Raises:
            NotMember: F is not in the scheme.
        """
        F = tuple(F)
        if not self.scheme.is_member(F):
            raise NotMember(f"{F} is not a member", set=F)
        return self._captures(F, [tuple(c) for c in C])

    def _captures(self, F: tuple, C: List[tuple]) -> bool:
        k = self.scheme.rank_of_size(len(F))
        if not C or not k or self.scheme.n(k) < len(C):
            return False
        pieces = self.scheme.pieces(F)
        root = set(F[: self.scheme.r(k)])
        base = pieces[0]
        for i, c in enumerate(C):
            piece = pieces[i]
            if not set(c) <= set(piece) or set(c) <= root:
                return False
            phi = dict(zip(base, piece))
            if tuple(sorted(phi[x] for x in C[0])) != tuple(sorted(c)):
                return False
        return True

    def fully_captures(self, F: Sequence[int], C: Sequence[Sequence[int]]) -> bool:
        """captures(F, C) and |C| = n at the rank of F."""
        if not self.captures(F, C):
            return False
        return len(C) == self.scheme.n(self.scheme.rank_of(F))

    def ordinal_tuple_captured(self, C: Sequence[int]) -> Optional[int]:
        """Level at which the singletons of C are captured, if any.

        Uses the criterion Ξ_{C(i)}(ρ^C) = i for every i and Δ = ρ = ρ^C on
        all pairs.
        """
        C = tuple(sorted(set(C)))
        if not C:
            raise ValueError("ordinal_tuple_captured needs a nonempty set")
        if len(C) == 1:
            return 0
        level = self.metrics.rho_diameter(C)
        for i, alpha in enumerate(C):
            if self.metrics.xi(alpha, level) != i:
                return None
        for a, b in combinations(C, 2):
            if not (self.metrics.delta(a, b) == self.metrics.rho(a, b) == level):
                return None
        return level

    def scan_captured(self, q: CaptureQuery) -> List[CaptureHit]:
        """Every captured n-subfamily of the query family inside the window.

        Raises:
            LevelTooDeep: the window needs a level beyond the element budget.
        """
        hits: List[CaptureHit] = []
        level = max(1, q.k_min + 1)
        while self.scheme.m(level) <= q.window:
            if self._level_allowed(q, level) and self.scheme.n(level) >= q.n:
                for F in self.scheme.elements_of_rank_within(level, q.window):
                    hits.extend(self._scan_member(F, level, q))
            level += 1
        self.log_debug("Capture scan finished", window=q.window, hits=len(hits))
        return hits

    def _level_allowed(self, q: CaptureQuery, level: int) -> bool:
        if q.partition is None or q.cell is None:
            return True
        return cell_of(q.partition, self.scheme.spec, level) == q.cell

    def _scan_member(self, F: tuple, level: int, q: CaptureQuery) -> List[CaptureHit]:
        members = set(F)
        root = set(F[: self.scheme.r(level)])
        candidates = [
            index
            for index, c in enumerate(q.family)
            if set(c) <= members and not set(c) <= root
        ]
        found = []
        for chosen in combinations(candidates, q.n):
            ordered = sorted(chosen, key=lambda index: (q.family[index][-1], index))
            if self._captures(F, [q.family[index] for index in ordered]):
                found.append(CaptureHit(level=level, F=F, indices=tuple(ordered)))
        found.sort(key=lambda hit: hit.indices)
        return found
