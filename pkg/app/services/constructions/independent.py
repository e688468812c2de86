"""An independent coherent family of functions on a pretower, and its χ posets.

Level k of the underlying set is N_k = ({k} × [r_k]^2) ∪ ({k} × (m_k - r_k)):
pair points (k, s0, s1) with s0 < s1 < r_k and number points (k, j).
"""

from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ...models.constructions import ChiReport, Point, TruncatedFunction, TruncatedSet
from ...models.errors import PreconditionViolation
from .base import ConstructionBase

CHI_DISJOINT = 0
CHI_LINKED = 1

Pair = Tuple[int, int]


class IndependentService(ConstructionBase):
    """Pretower {T_α}, functions f_α: T_α -> α and the posets χ_0, χ_1."""

    def _require_type(self, K: int) -> None:
        self.require_growth(
            "independent coherent family",
            K,
            lambda k: 2 ** (self.scheme.r(k) ** 2),
            strict=True,
        )

    def root_pairs(self, k: int) -> List[Pair]:
        """[r_k]^2 in lexicographic order."""
        return list(combinations(range(self.scheme.r(k)), 2))

    def s_subset(self, k: int, index: int) -> Tuple[Pair, ...]:
        """S^k_index: S^k_0 = S^k_1 = [r_k]^2, then every subset by a binary counter."""
        pairs = self.root_pairs(k)
        if index < 2:
            return tuple(pairs)
        mask = (index - 2) % (1 << len(pairs))
        return tuple(p for j, p in enumerate(pairs) if mask >> j & 1)

    def subset_index(self, k: int, subset: Sequence[Pair]) -> int:
        """Some 0 < i < n_k with S^k_i = subset.

        Raises:
            PreconditionViolation: subset is not a set of pairs below r_k.
        """
        pairs = self.root_pairs(k)
        chosen = {tuple(sorted(p)) for p in subset}
        if not chosen <= set(pairs):
            raise PreconditionViolation(
                f"pairs must be 2-subsets of r_{k}", k=k, subset=sorted(chosen)
            )
        self._require_type(k)
        if chosen == set(pairs):
            return 1
        return 2 + sum(1 << j for j, p in enumerate(pairs) if p in chosen)

    # Pretower and functions

    def tower_level(self, alpha: int, k: int) -> Dict[Point, int]:
        """f_α on T^k_α."""
        xi = self.metrics.xi(alpha, k)
        if xi < 0:
            return {}
        closure = self.scheme.closure(alpha, k)
        r = self.scheme.r(k)
        values: Dict[Point, int] = {}
        for s0, s1 in self.s_subset(k, xi):
            values[(k, s0, s1)] = closure[s0] if xi == 0 else closure[s1]
        for j in range(self.position(alpha, k) - r):
            values[(k, j)] = closure[j + r]
        return values

    def indep_coherent(self, alpha: int, K: int) -> TruncatedFunction:
        """f_α on T_α, both cut at level K.

        Raises:
            TypeTooSmall: n_k <= 2^{r_k^2} for some k <= K.
        """
        self._require_type(K)
        values: Dict[Point, int] = {}
        for k in range(1, K + 1):
            values.update(self.tower_level(alpha, k))
        return TruncatedFunction(values=values, level=K)

    def fiber(self, beta: int, alpha: int, K: int) -> TruncatedSet:
        """f_β^{-1}(α) up to level K."""
        return TruncatedSet(elements=self.indep_coherent(beta, K).fiber(alpha), level=K)

    def coherence_failures(self, alpha: int, beta: int, K: int) -> List[Point]:
        """Points of T^k_α ∩ T^k_β with ρ(α, β) < k <= K where f_α and f_β differ."""
        self._require_type(K)
        failures = []
        for k in range(self.metrics.rho(alpha, beta) + 1, K + 1):
            f, g = self.tower_level(alpha, k), self.tower_level(beta, k)
            failures.extend(p for p in f if p in g and f[p] != g[p])
        return sorted(failures)

    def tower_failures(self, alpha: int, beta: int, K: int) -> List[Point]:
        """Points of T^k_α ∖ T^k_β for α < β and ρ(α, β) < k <= K."""
        self._require_type(K)
        failures = []
        for k in range(self.metrics.rho(alpha, beta) + 1, K + 1):
            g = self.tower_level(beta, k)
            failures.extend(p for p in self.tower_level(alpha, k) if p not in g)
        return sorted(failures)

    # χ posets

    def _fibers(
        self, sigma: Sequence[int], pair: Pair, K: int
    ) -> Tuple[Dict[int, set], Dict[int, set]]:
        xi, mu = pair
        if not xi < mu or any(alpha <= mu for alpha in sigma):
            raise PreconditionViolation(
                "χ coordinates need xi < mu < every member of sigma",
                pair=list(pair),
                sigma=sorted(sigma),
            )
        A, B = {}, {}
        for alpha in sigma:
            f = self.indep_coherent(alpha, K)
            A[alpha] = set(f.fiber(xi))
            B[alpha] = set(f.fiber(mu))
        return A, B

    def chi_member(self, sigma: Sequence[int], pair: Pair, poset: int, K: int) -> bool:
        """σ ∈ χ_poset(A^ξ, A^μ) read on levels <= K.

        χ_0 asks (⋃A_α) ∩ (⋃B_α) = ∅ and χ_1 asks A_α ∩ B_β or A_β ∩ B_α
        to be nonempty for all α ≠ β in σ.
        """
        if poset not in (CHI_DISJOINT, CHI_LINKED):
            raise PreconditionViolation("poset must be 0 or 1", poset=poset)
        members = sorted(set(sigma))
        A, B = self._fibers(members, pair, K)
        if poset == CHI_DISJOINT:
            left = set().union(*A.values()) if A else set()
            right = set().union(*B.values()) if B else set()
            return not left & right
        return all(
            (A[a] & B[b]) or (A[b] & B[a]) for a, b in combinations(members, 2)
        )

    def chi_compatible(
        self,
        p: Mapping[Pair, Sequence[int]],
        s: Mapping[Pair, int],
        K: int,
        q: Optional[Mapping[Pair, Sequence[int]]] = None,
    ) -> ChiReport:
        """Whether p (or p ∪ q) is a condition of ∏_c χ_{s(c)}(c), read up to level K."""
        coordinates: List[Dict[str, Any]] = []
        for pair in sorted(set(p) | set(q or {})):
            if pair not in s:
                raise PreconditionViolation("every coordinate needs a poset", pair=list(pair))
            members = sorted(set(p.get(pair, ())) | set((q or {}).get(pair, ())))
            holds = self.chi_member(members, pair, s[pair], K)
            coordinates.append(
                {"pair": list(pair), "poset": s[pair], "sigma": members, "holds": holds}
            )
        report = ChiReport(
            level=K, compatible=all(c["holds"] for c in coordinates), coordinates=coordinates
        )
        self.log_debug("Checked χ condition", k=K, compatible=report.compatible)
        return report
