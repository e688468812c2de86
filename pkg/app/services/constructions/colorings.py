"""Colorings of pairs read off ρ, Δ, Ξ and the oscillation of the f_α.

Includes the oscillation partition {P_n}, the corrected oscillation o and its
refinement o*, the polychromatic coloring, the S-space points and the
bookkeeping sets H(β), C(β) used by the discrete subspace arguments.
"""

import threading
from bisect import bisect_right
from math import isqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ...models.constructions import Allocation
from ...models.errors import PreconditionViolation
from ..ordinal_metrics import MetricView
from ..scheme_engine import SchemeView
from .base import ConstructionBase

FALLBACK_COLOR = 17

Word = Tuple[int, ...]


def pair(x: int, y: int) -> int:
    """Cantor pairing."""
    return (x + y) * (x + y + 1) // 2 + y


def unpair(z: int) -> Tuple[int, int]:
    """Inverse of :func:`pair`."""
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def decode_sequence(code: int) -> Word:
    """The finite sequence of naturals numbered ``code``; 0 is the empty sequence."""
    values = []
    while code > 0:
        head, code = unpair(code - 1)
        values.append(head)
    return tuple(values)


def encode_sequence(values: Sequence[int]) -> int:
    code = 0
    for value in reversed(tuple(values)):
        code = pair(value, code) + 1
    return code


def is_prefix(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    return len(sigma) <= len(tau) and tuple(tau[: len(sigma)]) == tuple(sigma)


def pairwise_incomparable(domain: Sequence[Word]) -> bool:
    for i, sigma in enumerate(domain):
        for tau in domain[i + 1 :]:
            if is_prefix(sigma, tau) or is_prefix(tau, sigma):
                return False
    return True


def decode_map(n: int) -> Tuple[Tuple[Word, ...], Dict[Tuple[Word, Word], int]]:
    """The n-th finite map h: X × X -> ω on a pairwise incomparable X ⊆ ω^{<ω}.

    n = pair(set code, value code): bit j of the set code puts sequence j into
    X; the value code unpairs into h's values over X × X in lexicographic
    order of sequence numbers. Codes whose X has comparable elements number
    the empty map.
    """
    set_code, value_code = unpair(n)
    codes = [j for j in range(set_code.bit_length()) if set_code >> j & 1]
    domain = tuple(decode_sequence(j) for j in codes)
    if not pairwise_incomparable(domain):
        return (), {}
    h = {}
    for sigma in domain:
        for tau in domain:
            h[(sigma, tau)], value_code = unpair(value_code)
    return domain, h


def encode_map(domain: Sequence[Word], h: Dict[Tuple[Word, Word], int]) -> int:
    """An index n with decode_map(n) == (domain, h)."""
    ordered = sorted((encode_sequence(sigma), tuple(sigma)) for sigma in domain)
    set_code = sum(1 << code for code, _ in ordered)
    keys = [(sigma, tau) for _, sigma in ordered for _, tau in ordered]
    value_code = 0
    for key in reversed(keys):
        value_code = pair(h[key], value_code)
    return pair(set_code, value_code)


class OmegaPartition:
    """Partition {P_n} of ω with an interval [l, 2l+k] ⊆ P_n for every n, k.

    Pairs (n, k) are visited in Cantor-diagonal order; each receives the next
    interval [l, 2l+k] starting at the current frontier l. Interval widths
    grow geometrically, so membership is answered by bisecting the lows.
    """

    def __init__(self) -> None:
        self.allocations: List[Allocation] = []
        self._lows: List[int] = []
        self._frontier = 0
        self._lock = threading.Lock()

    def _allocate_next(self) -> Allocation:
        n, k = unpair(len(self.allocations))
        low = self._frontier
        allocation = Allocation(n=n, k=k, low=low, high=2 * low + k)
        self.allocations.append(allocation)
        self._lows.append(low)
        self._frontier = allocation.high + 1
        return allocation

    def allocation_of(self, x: int) -> Allocation:
        """The allocated interval holding x."""
        if x < 0:
            raise ValueError("the partition covers the naturals only")
        with self._lock:
            while self._frontier <= x:
                self._allocate_next()
        return self.allocations[bisect_right(self._lows, x) - 1]

    def cell_of(self, x: int) -> int:
        return self.allocation_of(x).n

    def tiling_failures(self) -> List[int]:
        """Indices of allocations that do not start right after their predecessor."""
        expected, failures = 0, []
        for index, allocation in enumerate(self.allocations):
            if allocation.low != expected or allocation.high < allocation.low:
                failures.append(index)
            expected = allocation.high + 1
        return failures

    def certify(self, limit: int) -> Dict[Tuple[int, int], Allocation]:
        """Allocation witnessing [l, 2l+k] ⊆ P_n for every n, k <= limit."""
        with self._lock:
            while len(self.allocations) <= pair(limit, limit):
                self._allocate_next()
        found = {}
        for allocation in self.allocations:
            key = (allocation.n, allocation.k)
            if key[0] <= limit and key[1] <= limit and key not in found:
                found[key] = allocation
        return found

    def intervals(self) -> Iterator[Tuple[int, int, int]]:
        for allocation in self.allocations:
            yield allocation.n, allocation.low, allocation.high


class ColoringService(ConstructionBase):
    """Pair colorings over one scheme."""

    def __init__(
        self,
        scheme: SchemeView,
        metrics: Optional[MetricView] = None,
        partition: Optional[OmegaPartition] = None,
    ):
        super().__init__(scheme, metrics)
        self.partition = partition or OmegaPartition()
        self._cset: Dict[int, Tuple[int, ...]] = {}

    @staticmethod
    def _ordered(alpha: int, beta: int) -> Tuple[int, int]:
        if alpha == beta:
            raise PreconditionViolation("colorings are defined on pairs", alpha=alpha)
        return (alpha, beta) if alpha < beta else (beta, alpha)

    # Polychromatic coloring

    def polychromatic_color(self, alpha: int, beta: int) -> int:
        """pair(β, pair(ρ, |(α)_ρ|)) when Ξ_β(ρ) >= 3, else with |(α)_{ρ-1}|."""
        alpha, beta = self._ordered(alpha, beta)
        rho = self.metrics.rho(alpha, beta)
        level = rho if self.metrics.xi(beta, rho) >= 3 else rho - 1
        return pair(beta, pair(rho, len(self.scheme.closure(alpha, level))))

    def color_table(self, window: int) -> List[List[int]]:
        """Rows [α, β, c(α, β)] for α < β < window."""
        return [
            [alpha, beta, self.polychromatic_color(alpha, beta)]
            for beta in range(window)
            for alpha in range(beta)
        ]

    # Oscillation colorings

    def f_prefix(self, alpha: int, length: int) -> Word:
        """(f_α(0), ..., f_α(length-1)) with f_α(l) = |(α)_l|."""
        return tuple(self.metrics.f(alpha, l) for l in range(length))

    def osc_color_o(self, alpha: int, beta: int) -> int:
        """o(α, β) = n iff osc(α, β) ∈ P_n."""
        alpha, beta = self._ordered(alpha, beta)
        count, _ = self.metrics.osc(alpha, beta)
        return self.partition.cell_of(count)

    def o_star(self, alpha: int, beta: int) -> int:
        """h_n(σ_α, σ_β) for n = o(α, β) when X_n has σ_α ⊑ f_α and σ_β ⊑ f_β, else 17."""
        n = self.osc_color_o(alpha, beta)
        domain, h = decode_map(n)
        sigma_alpha = self._extended_by(alpha, domain)
        sigma_beta = self._extended_by(beta, domain)
        if sigma_alpha is None or sigma_beta is None:
            return FALLBACK_COLOR
        return h[(sigma_alpha, sigma_beta)]

    def _extended_by(self, alpha: int, domain: Sequence[Word]) -> Optional[Word]:
        for sigma in domain:
            if self.f_prefix(alpha, len(sigma)) == sigma:
                return sigma
        return None

    def sspace_point(self, alpha: int, beta: int, side: str = "x") -> int:
        """x_α(β) (side "x") or y_α(β) (side "y")."""
        if side not in {"x", "y"}:
            raise ValueError(f"Unknown side: {side}")
        if alpha == beta:
            return 1
        lower_first = alpha < beta if side == "x" else alpha > beta
        if not lower_first:
            return 0
        return min(self.o_star(alpha, beta), 1)

    # Pretowers and bounded functions

    def pretower_set(self, alpha: int, N: int) -> Tuple[Tuple[int, int], ...]:
        """T_{f_α} ∩ (N × ω) = {(n, m) : n < N, m <= f_α(n)}."""
        return tuple(
            (n, m) for n in range(N) for m in range(self.metrics.f(alpha, n) + 1)
        )

    def bounded_h(self, alpha: int, i: int) -> int:
        """h_α(i) = m_i - f_α(i)."""
        return self.scheme.m(i) - self.metrics.f(alpha, i)

    def neg_partition_color(self, alpha: int, beta: int) -> int:
        """1 when Δ(α, β) = ρ(α, β), else 0."""
        alpha, beta = self._ordered(alpha, beta)
        return int(self.metrics.delta(alpha, beta) == self.metrics.rho(alpha, beta))

    # H(β) and C(β)

    def hset(self, beta: int) -> Tuple[int, ...]:
        """H(β): α ∈ (β)^-_{l+1} with |(α)_l| = |(β)_l| for some l >= 1."""
        found = set()
        top = self.scheme.universe_level(beta) + 1
        for l in range(1, top + 1):
            size = self.metrics.f(beta, l)
            for alpha in self.scheme.closure_minus(beta, l + 1):
                if self.metrics.f(alpha, l) == size:
                    found.add(alpha)
        return tuple(sorted(found))

    def cset(self, beta: int) -> Tuple[int, ...]:
        """C(β), built from C(γ) for γ ∈ H(β).

        α < β joins when some γ ∈ H(β) has α ∈ C(γ) and Δ(α, γ) > Δ(α, ξ)
        for every other ξ ∈ H(β) ∪ {β}.
        """
        cached = self._cset.get(beta)
        if cached is not None:
            return cached
        h = self.hset(beta)
        rivals = h + (beta,)
        members = {beta}
        for gamma in h:
            for alpha in self.cset(gamma):
                if alpha >= beta:
                    continue
                if all(
                    self.metrics.delta(alpha, gamma) > self.metrics.delta(alpha, xi)
                    for xi in rivals
                    if xi != gamma
                ):
                    members.add(alpha)
        result = tuple(sorted(members))
        self._cset[beta] = result
        return result

    def cset_level(self, beta: int, k: int) -> Tuple[int, ...]:
        """C_k(β) = {α ∈ C(β) : Δ(α, β) >= k}."""
        return tuple(
            alpha for alpha in self.cset(beta) if self.metrics.delta(alpha, beta) >= k
        )
