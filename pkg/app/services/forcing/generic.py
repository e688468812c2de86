"""Demand-driven generic chains and the scheme fragments they induce over γ + ω.

A fragment is the union of the schemes F(p) along a descending chain of
conditions. Because every condition of the chain lies below the earlier ones,
the whole fragment is read off its strongest condition together with the
universe below γ. Fragments are universes themselves, so stages stack up to
the configured block budget.
"""

import threading
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from ...models.config import ForcingConfig
from ...models.errors import (
    BudgetExceeded,
    DemandUnsatisfiable,
    InvariantViolation,
    NoWitnessInBudget,
    PreconditionViolation,
)
from ...models.forcing import (
    DemandRecord,
    ExtOrdinal,
    FragmentSnapshot,
    GoodSequence,
    OrdSet,
    ord_set,
    ord_set_json,
)
from ...utils.logging import LoggerMixin
from ..scheme_engine import SchemeView
from .good import AcceptanceService
from .poset import ForcingPoset
from .universe import BaseUniverse, Universe, positions

IH1Record = Tuple[OrdSet, ExtOrdinal, OrdSet]


class Fragment(Universe):
    """F^G over γ + ω for the chain built so far; γ is the top of ``inner``."""

    def __init__(self, inner: Universe, stage: int = 1):
        super().__init__(inner.scheme, inner.config)
        self.inner = inner
        self.stage = stage
        self.poset = ForcingPoset(inner)
        self.gamma = inner.top
        self.chain: List[OrdSet] = [self.poset.initial()]
        self.log: List[DemandRecord] = []
        self.ih1_records: List[IH1Record] = []
        self._lock = threading.RLock()

    @property
    def blocks(self) -> int:
        return self.inner.blocks + 1

    @property
    def strongest(self) -> OrdSet:
        return self.chain[-1]

    @property
    def rank(self) -> int:
        return self.poset.rank(self.strongest)

    def extend(self, q: Sequence[ExtOrdinal]) -> OrdSet:
        """Append q to the chain.

        Raises:
            InvariantViolation: q is not a condition below the strongest one.
        """
        q = tuple(q)
        with self._lock:
            if q == self.strongest:
                return q
            if not self.poset.is_condition(q) or not self.poset.leq(q, self.strongest):
                raise InvariantViolation(
                    "chain step is not an extension of the strongest condition",
                    p=[str(x) for x in self.strongest],
                    q=[str(x) for x in q],
                )
            self.chain.append(q)
        return q

    def condition_members(self, l: int) -> List[OrdSet]:
        """Rank-l members of F(p_t) that reach into the fresh block."""
        K = self.rank
        if l > K:
            return []
        p = self.strongest
        size = self.m(l)
        found = [
            tuple(p[i] for i in s)
            for s in self.scheme.finite_scheme(K)
            if len(s) == size and p[s[-1]] >= self.gamma
        ]
        return sorted(found)

    # Oracle

    def _fresh_position(self, beta: ExtOrdinal, k: Optional[int] = None) -> int:
        if beta.block > self.gamma.block:
            raise DemandUnsatisfiable(
                f"{beta} lies above the fresh block of stage {self.stage}",
                beta=str(beta),
                stage=self.stage,
            )
        p = self.strongest
        if beta not in p:
            raise DemandUnsatisfiable(
                f"{beta} is not in the strongest condition; demand it with --root first",
                beta=str(beta),
                stage=self.stage,
            )
        if k is not None and k > self.rank:
            raise DemandUnsatisfiable(
                f"level {k} exceeds the rank {self.rank} of the strongest condition",
                beta=str(beta),
                k=k,
                stage=self.stage,
            )
        return p.index(beta)

    def closure(self, beta: ExtOrdinal, k: int) -> OrdSet:
        if beta < self.gamma:
            return self.inner.closure(beta, k)
        i = self._fresh_position(beta, k)
        p = self.strongest
        return tuple(p[x] for x in self.scheme.closure(i, k))

    def universe_level(self, beta: ExtOrdinal) -> int:
        if beta < self.gamma:
            return self.inner.universe_level(beta)
        self._fresh_position(beta)
        return self.rank + 1

    def is_member(self, s: Sequence[ExtOrdinal]) -> bool:
        s = tuple(s)
        if not s or list(s) != sorted(set(s)):
            return False
        if s[-1] < self.gamma:
            return self.inner.is_member(s)
        places = positions(s, self.strongest)
        return places is not None and self.scheme.is_member(places)

    def _witnesses(self, F: OrdSet, A: OrdSet, alpha: ExtOrdinal) -> bool:
        k = self.scheme.rank_of_size(len(F))
        if not k:
            return False
        below = tuple(x for x in F if x < alpha)
        return set(A) <= set(self.pieces(F)[0]) and below == self.root(F)

    def ih1_witness(self, A: Sequence[ExtOrdinal], alpha: ExtOrdinal) -> OrdSet:
        """A recorded witness, the inner universe's witness, or one inside F(p_t).

        Raises:
            NoWitnessInBudget: none of these sources holds a witness.
        """
        A = tuple(sorted(A))
        for _, _, F in self.ih1_records:
            if self._witnesses(F, A, alpha):
                return F
        if alpha < self.gamma and all(x < self.gamma for x in A):
            return self.inner.ih1_witness(A, alpha)
        for l in range(1, self.rank + 1):
            for F in self.condition_members(l):
                if self._witnesses(F, A, alpha):
                    return F
        raise NoWitnessInBudget(
            f"stage {self.stage} holds no IH1 witness; meet it with --ih1 at that stage",
            A=[str(x) for x in A],
            alpha=str(alpha),
            stage=self.stage,
        )

    def member_containing(self, beta: ExtOrdinal, l: int) -> OrdSet:
        if beta < self.gamma:
            return self.inner.member_containing(beta, l)
        self._fresh_position(beta, l)
        p = self.strongest
        i = p.index(beta)
        return tuple(p[x] for x in self.scheme.member_of_rank_containing(i, l))

    def members_of_rank(self, l: int, bound: Optional[int] = None):
        yield from self.inner.members_of_rank(l, bound)
        yield from self.condition_members(l)

    # Checks and views

    def restriction_failures(self) -> List[OrdSet]:
        """Members of F(p_t) below γ that the inner universe does not hold."""
        p = self.strongest
        failures = []
        for s in self.scheme.finite_scheme(self.rank):
            image = tuple(p[i] for i in s)
            if image[-1] < self.gamma and not self.inner.is_member(image):
                failures.append(image)
        return sorted(failures)

    def chain_failures(self) -> List[int]:
        """Indices i where chain[i] is not a condition or chain[i+1] does not extend it."""
        failures = []
        for i, p in enumerate(self.chain):
            if not self.poset.is_condition(p):
                failures.append(i)
            elif i + 1 < len(self.chain) and not self.poset.leq(self.chain[i + 1], p):
                failures.append(i)
        return failures

    def snapshot(self) -> FragmentSnapshot:
        with self._lock:
            return FragmentSnapshot(
                stage=self.stage,
                gamma_block=self.gamma.block,
                rank=self.rank,
                chain_length=len(self.chain),
                strongest=ord_set_json(self.strongest),
                ih1_witnesses=[
                    {
                        "A": ord_set_json(A),
                        "alpha": alpha.to_json(),
                        "witness": ord_set_json(F),
                    }
                    for A, alpha, F in self.ih1_records
                ],
            )


def _ordinal(value: Any) -> ExtOrdinal:
    if isinstance(value, ExtOrdinal):
        return value
    if isinstance(value, int):
        return ExtOrdinal(0, value)
    if isinstance(value, str):
        return ExtOrdinal.parse(value)
    return ExtOrdinal(*value)


class GenericBuilder(LoggerMixin):
    """Meets demanded dense sets one at a time with least-witness extensions."""

    def __init__(self, scheme: SchemeView, config: Optional[ForcingConfig] = None):
        self.scheme = scheme
        self.config = config or ForcingConfig()

    def base(self) -> BaseUniverse:
        return BaseUniverse(self.scheme, self.config)

    def start(self, inner: Universe) -> Fragment:
        """A fresh stage over ``inner`` starting from {γ}.

        Raises:
            BudgetExceeded: the new stage would pass the block budget.
        """
        if inner.blocks + 1 > self.config.block_budget:
            raise BudgetExceeded(
                f"stage would reach ω·{inner.blocks + 1} beyond the block budget",
                blocks=inner.blocks + 1,
                budget=self.config.block_budget,
            )
        fragment = Fragment(inner, stage=getattr(inner, "stage", 0) + 1)
        self.log_info("Started stage", stage=fragment.stage, gamma=str(fragment.gamma))
        return fragment

    # Demands

    def step(
        self, fragment: Fragment, op: str, args: Optional[Dict[str, Any]] = None
    ) -> Tuple[Fragment, DemandRecord]:
        """Meet one demand; ``advance`` opens the next stage on top of ``fragment``."""
        args = dict(args or {})
        if op == "advance":
            fragment = self.start(fragment)
            record = DemandRecord(
                op="advance",
                args=args,
                stage=fragment.stage,
                chosen=ord_set_json(fragment.strongest),
            )
            fragment.log.append(record)
            return fragment, record
        return fragment, self.apply(fragment, op, args)

    def apply(self, fragment: Fragment, op: str, args: Dict[str, Any]) -> DemandRecord:
        """Extend the chain of ``fragment`` into the dense set named by ``op``.

        Raises:
            PreconditionViolation: unknown op or malformed arguments.
            NoWitnessInBudget: an IH1 witness is missing.
            DemandUnsatisfiable: no level in the window meets an IH2 demand.
        """
        poset = fragment.poset
        witness: Optional[OrdSet] = None
        detail: Dict[str, Any] = {}
        try:
            if op == "contain":
                q = poset.extend_contain(fragment.strongest, _ordinal(args["alpha"]))
                fragment.extend(q)
            elif op == "root":
                level, q, F = poset.extend_root(
                    fragment.strongest, _ordinal(args["beta"]), int(args.get("k", 0))
                )
                fragment.extend(q)
                detail = {"level": level}
            elif op == "ih1":
                witness = self.meet_ih1(
                    fragment, [_ordinal(x) for x in args.get("A", [])], _ordinal(args["alpha"])
                )
            elif op == "ih2":
                T = args.get("T")
                witness, detail = self.meet_ih2(
                    fragment,
                    _ordinal(args["beta"]),
                    int(args["k"]),
                    delta=_ordinal(args["delta"]) if args.get("delta") is not None else None,
                    T=GoodSequence.model_validate(T) if T is not None else None,
                    D=[_ordinal(x) for x in args.get("D", [])],
                    window=args.get("window"),
                    bound=args.get("bound"),
                )
            else:
                raise PreconditionViolation(f"unknown demand {op!r}", op=op)
        except (KeyError, TypeError, ValueError) as e:
            raise PreconditionViolation(f"malformed {op} demand: {e}", op=op) from e

        record = DemandRecord(
            op=op,
            args=args,
            stage=fragment.stage,
            chosen=ord_set_json(fragment.strongest),
            witness=ord_set_json(witness) if witness is not None else None,
            detail=detail,
        )
        fragment.log.append(record)
        self.log_info(
            "Met demand",
            op=op,
            stage=fragment.stage,
            rank=fragment.rank,
            chain_length=len(fragment.chain),
        )
        return record

    def meet_ih1(
        self, fragment: Fragment, A: Sequence[ExtOrdinal], alpha: ExtOrdinal
    ) -> OrdSet:
        """Extend until the strongest condition is itself an IH1 witness for (A, α).

        With A ∪ {α} inside p, X = red_γ(p) and ξ the anchor of p, an inner
        witness G for (X, ξ + s) (or (X, α) when α < γ) is cut at ξ.

        Raises:
            PreconditionViolation: some ordinal lies above the fresh block.
            InvariantViolation: the cut misses a witness clause.
        """
        poset, gamma = fragment.poset, fragment.gamma
        A = ord_set(A)
        for x in sorted(set(A) | {alpha}):
            if x.block > gamma.block:
                raise PreconditionViolation(
                    f"{x} lies above the fresh block", ordinal=str(x), stage=fragment.stage
                )
            p = fragment.strongest
            if x in p:
                continue
            if x < gamma:
                fragment.extend(poset.extend_contain(p, x))
            else:
                fragment.extend(poset.extend_root(p, x, 0)[1])

        p = fragment.strongest
        X = poset.red(p)
        anchor = poset.anchor(p)
        target = alpha if alpha < gamma else anchor.plus(alpha.offset)
        G = fragment.inner.ih1_witness(X, target)
        q = fragment.extend(poset.cut(G, anchor))
        if poset.rank(q) == 0 or not fragment._witnesses(q, A, alpha):
            raise InvariantViolation(
                "cut of the inner witness is not a witness",
                A=[str(x) for x in A],
                alpha=str(alpha),
            )
        fragment.ih1_records.append((A, alpha, q))
        self.log_debug("Met IH1 demand", alpha=str(alpha), size=len(q))
        return q

    def meet_ih2(
        self,
        fragment: Fragment,
        beta: ExtOrdinal,
        k: int,
        delta: Optional[ExtOrdinal] = None,
        T: Optional[GoodSequence] = None,
        D: Iterable[ExtOrdinal] = (),
        window: Optional[int] = None,
        bound: Optional[int] = None,
    ) -> Tuple[OrdSet, Dict[str, Any]]:
        """Extend so that some level l meets the IH2 clauses for (δ, β, k, T).

        δ defaults to γ and T to {(∅, |(β)^-_k|)}. Returns the member of the
        fragment that carries β and the chosen (l, j).

        Raises:
            PreconditionViolation: β is not fresh, k < 2, δ is not a limit <= γ,
                T is not good or D reaches δ.
            DemandUnsatisfiable: no inner level in the window meets the clauses.
        """
        poset, gamma = fragment.poset, fragment.gamma
        delta = delta or gamma
        D = frozenset(D)
        if beta.block != gamma.block:
            raise PreconditionViolation(f"{beta} is not in the fresh block", beta=str(beta))
        if k < 2:
            raise PreconditionViolation("k must be at least 2", k=k)
        if not delta.is_limit or delta > gamma:
            raise PreconditionViolation(f"{delta} is not a limit <= γ", delta=str(delta))
        if any(x >= delta for x in D):
            raise PreconditionViolation("guess sets lie below δ", delta=str(delta))

        if delta < gamma and not any(delta <= x < gamma for x in fragment.strongest):
            fragment.extend(poset.extend_contain(fragment.strongest, delta))
        level, p, F_root = poset.extend_root(fragment.strongest, beta, k + 1)
        fragment.extend(p)

        acceptance = AcceptanceService(fragment)
        T = T or GoodSequence.single(fragment.position(beta, k))
        acceptance.require_good(T, beta, k)

        if delta == gamma:
            l = level + 1
            j, found = acceptance.best_acceptance(k, l, beta, gamma, D, T, bound)
            F = F_root if found is None else found[1]
            a = fragment.pieces(F)[j][fragment.r(l)]
        else:
            l, j, F, a = self._inner_row(fragment, acceptance, beta, k, level, delta, T, D, window, bound)

        q = fragment.extend(poset.cut(F, a))
        pieces = fragment.pieces(q)
        if beta not in pieces[j] or beta in fragment.root(q):
            raise InvariantViolation(
                f"{beta} is not in piece {j} of the chosen member", beta=str(beta), l=l
            )
        self.log_debug("Met IH2 demand", beta=str(beta), l=l, j=j)
        return q, {"l": l, "j": j, "k_prime": level}

    def _inner_row(self, fragment, acceptance, beta, k, level, delta, T, D, window, bound):
        """(l, j, F, ν) from a passing IH2 row of the inner universe at α = max(p ∩ γ)."""
        inner = fragment.inner
        gamma = fragment.gamma
        alpha = max(x for x in fragment.strongest if x < gamma)
        T_prime = acceptance.trans(k, level, alpha, beta, T)
        inner_acceptance = AcceptanceService(inner)
        window = window or inner.config.witness_level_budget
        for l in range(level + 1, level + window + 1):
            row = inner_acceptance.ih2_row(delta, alpha, level, l, T_prime, D, bound)
            if row.holds:
                break
        else:
            raise DemandUnsatisfiable(
                f"no level in ({level}, {level + window}] meets IH2 below {gamma}",
                delta=str(delta),
                alpha=str(alpha),
                k=level,
            )
        found = inner_acceptance.j_witness(level, l, alpha, delta, D, T_prime, row.j)
        if found is None:
            raise InvariantViolation("passing row lost its witness", l=l, j=row.j)
        C, F = found
        try:
            if row.j == 0:
                G = next(s for s in inner.sub_members(F, level) if alpha in s)
                nu = min(x for x in G if x > alpha)
            else:
                pieces = inner.pieces(F)
                eta = pieces[row.j][pieces[0].index(C[0])]
                nu = inner.closure(eta, level)[inner.position(alpha, level) + 1]
        except (StopIteration, ValueError, IndexError) as e:
            raise InvariantViolation(
                "no cut point above α in the witness member", alpha=str(alpha), l=l
            ) from e
        return l, row.j, F, nu

    # Chains

    def generic_build(self, base: Universe, demands: Iterable[DemandRecord]) -> Fragment:
        """Meet every demand in order, starting one stage above ``base``."""
        fragment = self.start(base)
        for demand in demands:
            fragment, _ = self.step(fragment, demand.op, demand.args)
        return fragment

    def replay(self, records: Sequence[DemandRecord]) -> Fragment:
        """Rebuild a fragment from its demand log, checking every recorded choice.

        Raises:
            InvariantViolation: a demand chose a different condition than recorded.
        """
        fragment = self.start(self.base())
        for index, record in enumerate(records):
            fragment, again = self.step(fragment, record.op, record.args)
            if record.chosen and again.chosen != record.chosen:
                raise InvariantViolation(
                    f"replay diverged at demand {index}",
                    index=index,
                    op=record.op,
                )
        self.log_info("Replayed demand log", demands=len(records), stage=fragment.stage)
        return fragment
