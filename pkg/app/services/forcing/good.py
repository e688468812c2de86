"""Good sequences, projections, approval, acceptance counts and Trans.

Every closure is read through one universe, so the same service answers
questions about the omega block and about fragments stacked over it.
"""

from itertools import islice
from typing import Iterable, List, Optional, Sequence, Tuple

from ...models.errors import (
    BoundViolation,
    DemandUnsatisfiable,
    InvariantViolation,
    PreconditionViolation,
)
from ...models.forcing import (
    ExtOrdinal,
    GoodEntry,
    GoodSequence,
    Ih2Report,
    Ih2Row,
    OrdSet,
    ProjectionResult,
    TransEquivReport,
)
from ...utils.logging import LoggerMixin
from .universe import Universe, is_interval

Acceptance = Tuple[OrdSet, OrdSet]


def in_bl(intervals: Sequence[Sequence[int]], t: int, m: int) -> bool:
    """Membership in Bl(t, k) for m = m_k."""
    previous = -1
    for block in intervals:
        values = sorted(set(block))
        if not values or not is_interval(values):
            return False
        if values[0] <= previous or values[0] < t or values[-1] >= m:
            return False
        previous = values[-1]
    return True


class AcceptanceService(LoggerMixin):
    """The approval machinery over one universe."""

    def __init__(self, universe: Universe):
        self.universe = universe
        self.scheme = universe.scheme

    def require_good(self, T: GoodSequence, beta: ExtOrdinal, k: int) -> None:
        """Raises PreconditionViolation unless T ∈ Good(β, k)."""
        t = self.universe.position(beta, k)
        if not T.is_good(t, self.universe.m(k)):
            raise PreconditionViolation(
                f"T is not ({t}, {k})-good", beta=str(beta), k=k, t=t
            )

    # Projection and approval

    def projection(self, xi: ExtOrdinal, k: int, l: int, entry: GoodEntry) -> ProjectionResult:
        """π^{k,l}_ξ(𝕀) with per-entry interval flags.

        Raises:
            PreconditionViolation: k >= l.
            BoundViolation: z_𝕀 > |(ξ)^-_k|.
        """
        if k >= l:
            raise PreconditionViolation("projection needs k < l", k=k, l=l)
        return self._project(xi, k, l, entry)

    def _project(self, xi: ExtOrdinal, k: int, l: int, entry: GoodEntry) -> ProjectionResult:
        low = self.universe.closure(xi, k)
        if entry.z > len(low) - 1:
            raise BoundViolation(
                f"z = {entry.z} exceeds |(ξ)^-_{k}| = {len(low) - 1}", xi=str(xi), k=k
            )
        high = self.universe.closure(xi, l)
        index = {x: i for i, x in enumerate(high)}
        sets = [sorted(index[low[i]] for i in block) for block in entry.intervals]
        return ProjectionResult(sets=sets, intervals=[is_interval(s) for s in sets])

    def checkmark(
        self, beta: ExtOrdinal, xi: ExtOrdinal, k: int, l: int, T: GoodSequence
    ) -> Tuple[bool, Optional[GoodEntry]]:
        """(β, ξ, k, l) ✓ T and the entry that approves it.

        Raises:
            PreconditionViolation: k > l or T is not in Good(β, k).
        """
        if k > l:
            raise PreconditionViolation("approval needs k <= l", k=k, l=l)
        self.require_good(T, beta, k)
        return self._approves(beta, xi, k, l, T)

    def _approves(
        self, beta: ExtOrdinal, xi: ExtOrdinal, k: int, l: int, T: GoodSequence
    ) -> Tuple[bool, Optional[GoodEntry]]:
        u = self.universe
        high = u.closure(xi, l)
        b = u.position(beta, l)
        if b + 1 > len(high):
            return False, None
        marker = high[b] in set(u.closure(xi, k))
        z = u.position(xi, k)
        for entry in T.entries:
            if entry.z != z or not marker:
                continue
            if self._project(xi, k, l, entry).in_bl:
                return True, entry
        return False, None

    # Acceptance

    def accepted(
        self,
        C: Sequence[ExtOrdinal],
        G: Sequence[ExtOrdinal],
        k: int,
        l: int,
        beta: ExtOrdinal,
        delta: ExtOrdinal,
        T: GoodSequence,
    ) -> bool:
        """Whether (C, G) is accepted by (k, l, β, δ, T)."""
        C, G = tuple(C), tuple(G)
        if len(G) != self.universe.m(l) or not self.universe.captures_points(G, C):
            return False
        if not self._approves(beta, C[0], k, l - 1, T)[0]:
            return False
        trace = tuple(x for x in self.universe.closure(beta, l - 1) if x < delta)
        return trace == self.universe.root(G)

    def _captured_prefix(
        self, G: OrdSet, c0: ExtOrdinal, D: frozenset, limit: Optional[int] = None
    ) -> OrdSet:
        """The longest C ⊆ D starting at c0 whose points G captures."""
        pieces = self.universe.pieces(G)
        offset = pieces[0].index(c0)
        C = []
        for piece in pieces[: limit or len(pieces)]:
            if piece[offset] not in D:
                break
            C.append(piece[offset])
        return tuple(C)

    def best_acceptance(
        self,
        k: int,
        l: int,
        beta: ExtOrdinal,
        delta: ExtOrdinal,
        D: Iterable[ExtOrdinal],
        T: GoodSequence,
        bound: Optional[int] = None,
    ) -> Tuple[int, Optional[Acceptance]]:
        """j(k, l, β, δ, T) with the (C, G) reaching it, G ranging over rank-l members below δ.

        Raises:
            ScanBudgetExceeded: more candidate members than the scan budget.
        """
        D = frozenset(D)
        if not D:
            return 0, None
        trace = tuple(x for x in self.universe.closure(beta, l - 1) if x < delta)
        r = self.universe.r(l)
        if len(trace) != r:
            return 0, None
        best: Tuple[int, Optional[Acceptance]] = (0, None)
        for G in self.universe.scan(self.universe.members_of_rank(l, bound)):
            if G[-1] >= delta or G[:r] != trace:
                continue
            for c0 in self.universe.pieces(G)[0][r:]:
                if c0 not in D or not self._approves(beta, c0, k, l - 1, T)[0]:
                    continue
                C = self._captured_prefix(G, c0, D)
                if len(C) > best[0]:
                    best = (len(C), (C, G))
        self.log_debug("Scanned acceptance", k=l, beta=str(beta), j=best[0])
        return best

    def j_value(
        self,
        k: int,
        l: int,
        beta: ExtOrdinal,
        delta: ExtOrdinal,
        D: Iterable[ExtOrdinal],
        T: GoodSequence,
        bound: Optional[int] = None,
    ) -> int:
        return self.best_acceptance(k, l, beta, delta, D, T, bound)[0]

    def fully_captured(
        self, l: int, D: Iterable[ExtOrdinal], bound: Optional[int] = None
    ) -> Optional[Acceptance]:
        """Some (C, F) with C ⊆ D fully captured by a rank-l member F."""
        D = frozenset(D)
        if not D:
            return None
        r = self.universe.r(l)
        for F in self.universe.scan(self.universe.members_of_rank(l, bound)):
            pieces = self.universe.pieces(F)
            for offset in range(r, len(pieces[0])):
                C = tuple(piece[offset] for piece in pieces)
                if all(c in D for c in C):
                    return C, F
        return None

    def j_witness(
        self,
        k: int,
        l: int,
        beta: ExtOrdinal,
        delta: ExtOrdinal,
        D: Iterable[ExtOrdinal],
        T: GoodSequence,
        j: int,
    ) -> Optional[Acceptance]:
        """(C, F) with F of rank l, β ∈ F_j ∖ R(F) and, for j > 0, (C, F) accepted.

        Captured points lie below β, so the member containing β is canonical.
        """
        u = self.universe
        if u.metrics.xi(beta, l) != j:
            return None
        F = u.member_containing(beta, l)
        if j == 0:
            return (), F
        D = frozenset(D)
        for c0 in u.pieces(F)[0][u.r(l):]:
            if c0 not in D:
                continue
            C = self._captured_prefix(F, c0, D, limit=j)
            if len(C) == j and self.accepted(C, F, k, l, beta, delta, T):
                return C, F
        return None

    def ih2_row(
        self,
        delta: ExtOrdinal,
        beta: ExtOrdinal,
        k: int,
        l: int,
        T: GoodSequence,
        D: Iterable[ExtOrdinal],
        bound: Optional[int] = None,
    ) -> Ih2Row:
        D = frozenset(D)
        trace = [x for x in self.universe.closure(beta, l - 1) if x < delta]
        j, _ = self.best_acceptance(k, l, beta, delta, D, T, bound)
        return Ih2Row(
            l=l,
            clause_a=len(trace) == self.universe.r(l),
            clause_b=self.fully_captured(l, D, bound) is None,
            j=j,
            witness=self.j_witness(k, l, beta, delta, D, T, j) is not None,
        )

    def check_ih2_window(
        self,
        delta: Optional[ExtOrdinal],
        beta: Optional[ExtOrdinal],
        k: int,
        T: Optional[GoodSequence],
        l_range: Iterable[int],
        D: Iterable[ExtOrdinal] = (),
        bound: Optional[int] = None,
    ) -> Ih2Report:
        """Per-level IH2 rows; the omega universe has no limit to test and passes vacuously.

        Raises:
            PreconditionViolation: δ is not a limit below the top, β < δ, k < 2,
                T is not in Good(β, k) or D is not below δ.
            ScanBudgetExceeded: a member scan overflowed.
        """
        u = self.universe
        if u.blocks == 1:
            return Ih2Report(k=k, vacuous=True)
        if delta is None or beta is None or T is None:
            raise PreconditionViolation("δ, β and T are required above the omega block")
        if not delta.is_limit or delta >= u.top:
            raise PreconditionViolation(f"{delta} is not a limit below {u.top}", delta=str(delta))
        if not delta <= beta < u.top:
            raise PreconditionViolation(f"{beta} is not in [δ, {u.top})", beta=str(beta))
        if k < 2:
            raise PreconditionViolation("k must be at least 2", k=k)
        self.require_good(T, beta, k)
        D = frozenset(D)
        if any(x >= delta for x in D):
            raise PreconditionViolation("guess sets lie below δ", delta=str(delta))
        rows = [self.ih2_row(delta, beta, k, l, T, D, bound) for l in l_range if l > k]
        report = Ih2Report(delta=delta.to_json(), beta=beta.to_json(), k=k, rows=rows)
        self.log_info(
            "Checked IH2 window",
            delta=str(delta),
            beta=str(beta),
            passing=report.passing_levels,
        )
        return report

    # Trans

    def trans(
        self, k: int, k_prime: int, alpha: ExtOrdinal, beta: ExtOrdinal, T: GoodSequence
    ) -> GoodSequence:
        """Trans(k, k', α, β, T), certified to lie in Good(α, k') when nonempty.

        Raises:
            PreconditionViolation: 2 <= k < k' fails, α ∉ (β)^-_{k'} or T ∉ Good(β, k).
            InvariantViolation: the output is not good.
        """
        u = self.universe
        if not 2 <= k < k_prime:
            raise PreconditionViolation("Trans needs 2 <= k < k'", k=k, k_prime=k_prime)
        if alpha not in u.closure_minus(beta, k_prime):
            raise PreconditionViolation(
                f"{alpha} is not in (β)^-_{k_prime}", alpha=str(alpha), beta=str(beta)
            )
        self.require_good(T, beta, k)
        a, b = u.position(alpha, k_prime), u.position(beta, k_prime)
        head = tuple(range(a + 1, b + 1))
        entries: List[GoodEntry] = []
        for G in self._rank_sets(k, k_prime):
            if b not in G:
                continue
            for entry in T.entries:
                images = [tuple(G[i] for i in block) for block in entry.intervals]
                if not all(is_interval(image) for image in images):
                    continue
                J = (head,) + tuple(images)
                if any(J[i][-1] >= J[i + 1][0] for i in range(len(J) - 1)):
                    continue
                entries.append(GoodEntry(intervals=J, z=G[entry.z]))
        result = GoodSequence(entries=entries)
        if entries and not result.is_good(a, u.m(k_prime)):
            raise InvariantViolation(
                "Trans produced a sequence outside Good(α, k')", alpha=str(alpha), k=k_prime
            )
        return result

    def _rank_sets(self, k: int, k_prime: int) -> List[Tuple[int, ...]]:
        """F_k(m_{k'}) in lexicographic order."""
        size = self.scheme.m(k)
        return sorted(s for s in self.scheme.finite_scheme(k_prime) if len(s) == size)

    def _single_entries(self, t: int, m: int) -> Iterable[GoodSequence]:
        """Single-entry (t, k)-good sequences whose interval lies above t."""
        for z in range(t, m):
            yield GoodSequence.single(z)
            for low in range(t + 1, z + 1):
                for high in range(low, z + 1):
                    yield GoodSequence.single(z, [range(low, high + 1)])

    def _hypotheses(
        self, alpha: ExtOrdinal, beta: ExtOrdinal, xi: ExtOrdinal, k_prime: int, l: int
    ) -> bool:
        u = self.universe
        b_high = u.closure(beta, l)
        x_high = u.closure(xi, l)
        if len(b_high) > len(x_high):
            return False
        if x_high[len(b_high) - 1] not in set(u.closure(xi, k_prime)):
            return False
        low = u.closure(beta, k_prime)
        a = u.position(alpha, k_prime)
        index = {x: i for i, x in enumerate(b_high)}
        return is_interval([index[x] for x in low[a + 1 :]])

    def verify_trans_equiv(
        self,
        betas: Sequence[ExtOrdinal],
        xis: Sequence[ExtOrdinal],
        k_max: int,
        l_max: int,
        max_cases: int = 10_000,
    ) -> TransEquivReport:
        """Check (α, ξ, k', l) ✓ Trans ⟺ (β, ξ, k, l) ✓ T over a parameter grid.

        Tuples whose closures the universe cannot answer are counted as skipped.
        """
        report = TransEquivReport()
        for case in islice(self._trans_grid(betas, xis, k_max, l_max, report), max_cases):
            beta, alpha, xi, k, k_prime, l, T, T_prime = case
            left = self._approves(alpha, xi, k_prime, l, T_prime)[0]
            right = self._approves(beta, xi, k, l, T)[0]
            report.checked += 1
            if left and right:
                report.both_true += 1
            elif not left and not right:
                report.both_false += 1
            else:
                report.counterexamples.append(
                    {
                        "beta": str(beta),
                        "alpha": str(alpha),
                        "xi": str(xi),
                        "k": k,
                        "k_prime": k_prime,
                        "l": l,
                        "T": T.model_dump(),
                        "trans_side": left,
                        "original_side": right,
                    }
                )
        self.log_info(
            "Verified Trans equivalence",
            checked=report.checked,
            skipped=report.skipped,
            counterexamples=len(report.counterexamples),
        )
        return report

    def _trans_grid(self, betas, xis, k_max, l_max, report: TransEquivReport):
        u = self.universe
        for beta in betas:
            for k in range(2, k_max):
                for k_prime in range(k + 1, k_max + 1):
                    try:
                        t = u.position(beta, k)
                        alphas = u.closure_minus(beta, k_prime)
                    except DemandUnsatisfiable:
                        report.skipped += 1
                        continue
                    for T in self._single_entries(t, u.m(k)):
                        for alpha in alphas:
                            T_prime = self.trans(k, k_prime, alpha, beta, T)
                            for xi in xis:
                                for l in range(k_prime + 1, l_max + 1):
                                    try:
                                        if not self._hypotheses(alpha, beta, xi, k_prime, l):
                                            continue
                                    except DemandUnsatisfiable:
                                        report.skipped += 1
                                        continue
                                    yield beta, alpha, xi, k, k_prime, l, T, T_prime
