"""The poset of finite approximations to a scheme over γ + ω.

A condition p is a finite set of ordinals below γ + ω of some size m_k whose
part above γ is an initial segment of the fresh block and whose reduction
red_γ(p) is a member of the scheme over γ. p extends q when q is a member of
the unique scheme carried by p.
"""

from typing import List, Sequence, Tuple

from ...models.errors import InvariantViolation, NotMember, PreconditionViolation
from ...models.forcing import ExtOrdinal, OrdSet
from ...utils.logging import LoggerMixin
from .universe import Universe, lift, positions


class ForcingPoset(LoggerMixin):
    """P(F) for a universe F over γ = ω·b; fresh ordinals live in block b."""

    def __init__(self, universe: Universe):
        self.universe = universe
        self.scheme = universe.scheme
        self.gamma = universe.top

    # Reductions and cuts

    def red(self, p: Sequence[ExtOrdinal], delta: ExtOrdinal = None) -> OrdSet:
        """red_δ(p): (p ∩ δ) ∪ [α, α + |p ∖ α|) for α = max(p ∩ δ), else |p|.

        Raises:
            PreconditionViolation: p is empty.
        """
        if not p:
            raise PreconditionViolation("red needs a nonempty set")
        delta = delta or self.gamma
        p = tuple(sorted(p))
        below = [x for x in p if x < delta]
        if not below:
            return lift(range(len(p)))
        alpha = below[-1]
        count = len(p) - len(below) + 1
        return tuple(below[:-1]) + tuple(alpha.plus(i) for i in range(count))

    def cut(self, F: Sequence[ExtOrdinal], alpha: ExtOrdinal) -> OrdSet:
        """Cut(F, α) = (F ∩ α) ∪ [γ, γ + |F ∖ α|).

        Raises:
            NotMember: F is not a member of the scheme over γ.
            PreconditionViolation: α is not in F.
        """
        F = tuple(F)
        if not self.universe.is_member(F):
            raise NotMember(f"{[str(x) for x in F]} is not a member", set=[str(x) for x in F])
        if alpha not in F:
            raise PreconditionViolation(f"{alpha} is not in the set", alpha=str(alpha))
        head = tuple(x for x in F if x < alpha)
        return head + tuple(self.gamma.plus(i) for i in range(len(F) - len(head)))

    def anchor(self, p: Sequence[ExtOrdinal]) -> ExtOrdinal:
        """The ordinal where red_γ(p) starts replacing fresh points: max(p ∩ γ) + 1, or 0."""
        below = [x for x in p if x < self.gamma]
        return below[-1].plus(1) if below else ExtOrdinal(0, 0)

    # Conditions and order

    def rank(self, p: Sequence[ExtOrdinal]) -> int:
        k = self.scheme.rank_of_size(len(p))
        if k is None:
            raise PreconditionViolation(f"|p| = {len(p)} is not some m_k", size=len(p))
        return k

    def is_condition(self, p: Sequence[ExtOrdinal]) -> bool:
        p = tuple(p)
        if not p or list(p) != sorted(set(p)):
            return False
        if self.scheme.rank_of_size(len(p)) is None:
            return False
        fresh = [x for x in p if x >= self.gamma]
        if fresh != [self.gamma.plus(i) for i in range(len(fresh))]:
            return False
        return self.universe.is_member(self.red(p))

    def leq(self, p: Sequence[ExtOrdinal], q: Sequence[ExtOrdinal]) -> bool:
        """p ≤ q: q is a member of the scheme transported onto p."""
        places = positions(tuple(q), tuple(p))
        if places is None or not places:
            return False
        return self.scheme.is_member(places)

    def initial(self) -> OrdSet:
        """{γ}, the weakest condition the generic chains start from."""
        return (self.gamma,)

    def _require_condition(self, p: Sequence[ExtOrdinal]) -> OrdSet:
        p = tuple(p)
        if not self.is_condition(p):
            raise PreconditionViolation(
                "not a condition of the poset", p=[str(x) for x in p]
            )
        return p

    def _require_extension(self, q: OrdSet, p: OrdSet, step: str) -> None:
        if not self.is_condition(q) or not self.leq(q, p):
            raise InvariantViolation(
                f"{step} produced a set that does not extend p",
                p=[str(x) for x in p],
                q=[str(x) for x in q],
            )

    # Extension lemmas

    def extend_contain(self, p: Sequence[ExtOrdinal], alpha: ExtOrdinal) -> OrdSet:
        """Some q ≤ p with α ∈ q, for α < γ.

        With ξ the anchor of p, F an IH1 witness for ({α} ∪ red_γ(p), ξ) and
        ξ' = min(F_1 ∖ R(F)), the result is Cut(F, ξ').

        Raises:
            PreconditionViolation: p is not a condition or α >= γ.
            NoWitnessInBudget: the universe found no IH1 witness.
        """
        p = self._require_condition(p)
        if alpha >= self.gamma:
            raise PreconditionViolation(
                "fresh ordinals are added with extend_root", alpha=str(alpha)
            )
        if alpha in p:
            return p
        A = tuple(sorted(set(self.red(p)) | {alpha}))
        F = self.universe.ih1_witness(A, self.anchor(p))
        root = set(self.universe.root(F))
        xi = min(x for x in self.universe.pieces(F)[1] if x not in root)
        q = self.cut(F, xi)
        self._require_extension(q, p, "extend_contain")
        if alpha not in q:
            raise InvariantViolation("extension misses the demanded ordinal", alpha=str(alpha))
        self.log_debug("Extended condition", alpha=str(alpha), size=len(q))
        return q

    def extend_root(
        self, p: Sequence[ExtOrdinal], beta: ExtOrdinal, k: int
    ) -> Tuple[int, OrdSet, OrdSet]:
        """(k', q, F) with q ∈ P_{k'}, k' >= k, q ≤ p, β ∈ q and |q ∩ γ| = r_{k'+1}.

        F is the IH1 witness of rank k' + 1 whose first piece was cut; its
        root is q ∩ γ.

        Raises:
            PreconditionViolation: p is not a condition or β is not fresh.
            NoWitnessInBudget: the universe found no IH1 witness.
        """
        p = self._require_condition(p)
        if beta.block != self.gamma.block:
            raise PreconditionViolation(
                f"{beta} does not lie in the fresh block above {self.gamma}", beta=str(beta)
            )
        xi = self.anchor(p)
        span = beta.offset + self.scheme.m(k) + 1
        A = tuple(sorted(set(self.red(p)) | {xi.plus(i) for i in range(span)}))
        F = self.universe.ih1_witness(A, xi)
        first = self.universe.pieces(F)[0]
        q = self.cut(first, xi)
        level = self.rank(first)
        self._require_extension(q, p, "extend_root")
        below = [x for x in q if x < self.gamma]
        if beta not in q or len(below) != self.scheme.r(level + 1):
            raise InvariantViolation(
                "root extension broke its postcondition", beta=str(beta), level=level
            )
        self.log_debug("Extended root", beta=str(beta), k=level)
        return level, q, F

    # Exhaustive lemma checks

    def reduction_failures(self, top: int) -> List[Tuple[OrdSet, ExtOrdinal]]:
        """(F, α) over m_top whose Cut(F, α) is not a condition with red_γ in the scheme."""
        failures = []
        for G in self.scheme.level_sets(top):
            F = lift(G)
            for alpha in F:
                q = self.cut(F, alpha)
                if not self.is_condition(q) or not self.universe.is_member(self.red(q)):
                    failures.append((F, alpha))
        return failures

    def cut_lemma_failures(self, top: int) -> List[Tuple[OrdSet, ExtOrdinal, int]]:
        """(F, α, k) with Cut(F, α) not below Cut(G, α) for the rank-k G ∋ α inside F."""
        failures = []
        for G in self.scheme.level_sets(top):
            F = lift(G)
            level = self.rank(F)
            for k in range(level + 1):
                subs = self.universe.sub_members(F, k)
                for alpha in F:
                    inner = next(s for s in subs if alpha in s)
                    if not self.leq(self.cut(F, alpha), self.cut(inner, alpha)):
                        failures.append((F, alpha, k))
        return failures
