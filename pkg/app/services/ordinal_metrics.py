"""ρ, Δ, Ξ, closures and oscillation over any closure oracle.

The oracle is either a :class:`SchemeView` (omega universe) or a forcing-lab
fragment; both expose ``closure``, ``m``, ``n``, ``r`` and ``universe_level``.
"""

from functools import lru_cache, total_ordering
from typing import Any, Dict, List, Optional, Protocol, Sequence, Tuple

from ..models.errors import InvariantViolation, NonIntegerQuotient, PreconditionViolation
from ..models.results import FComparison
from ..models.sets import common_prefix_length
from ..utils.logging import LoggerMixin


class ClosureOracle(Protocol):
    def closure(self, beta: Any, k: int) -> Tuple[Any, ...]: ...

    def m(self, k: int) -> int: ...

    def n(self, k: int) -> int: ...

    def r(self, k: int) -> int: ...

    def universe_level(self, beta: Any) -> int: ...

    @property
    def cache_size(self) -> int: ...


@total_ordering
class _Infinity:
    """Marker above every level."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __hash__(self) -> int:
        return hash("infinity-marker")

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


class MetricView(LoggerMixin):
    """The ordinal metric apparatus of one scheme or fragment."""

    def __init__(self, oracle: ClosureOracle):
        self.oracle = oracle
        size = oracle.cache_size
        self.rho = lru_cache(maxsize=size)(self._rho)
        self.delta = lru_cache(maxsize=size)(self._delta)
        self.xi = lru_cache(maxsize=size)(self._xi)

    # Closures

    def closure(self, beta: Any, k: int) -> Tuple[Any, ...]:
        return self.oracle.closure(beta, k)

    def closure_minus(self, beta: Any, k: int) -> Tuple[Any, ...]:
        """(β)^-_k = (β)_k ∖ {β}."""
        return self.oracle.closure(beta, k)[:-1]

    def f(self, alpha: Any, l: int) -> int:
        """f_α(l) = |(α)_l|."""
        return len(self.oracle.closure(alpha, l))

    # ρ and Δ

    def _rho(self, alpha: Any, beta: Any) -> int:
        if alpha == beta:
            return 0
        low, high = (alpha, beta) if alpha < beta else (beta, alpha)
        k = 0
        top = self.oracle.universe_level(high)
        while k <= top:
            if low in self.oracle.closure(high, k):
                return k
            k += 1
        raise InvariantViolation(
            "closure chain never absorbed the smaller ordinal", alpha=alpha, beta=beta
        )

    def rho_diameter(self, s: Sequence[Any]) -> int:
        """ρ^F = max pairwise ρ."""
        values = list(s)
        best = 0
        for i, a in enumerate(values):
            for b in values[i + 1 :]:
                best = max(best, self.rho(a, b))
        return best

    def _delta(self, alpha: Any, beta: Any) -> Any:
        """Least k with |(α)_k| ≠ |(β)_k|; INFINITY when α = β."""
        if alpha == beta:
            return INFINITY
        k = 0
        while self.f(alpha, k) == self.f(beta, k):
            k += 1
        return k

    def delta_min_difference(self, alpha: Any, beta: Any) -> Optional[Tuple[Any, Any]]:
        """Least elements of (α)_Δ ∖ (β)_Δ and (β)_Δ ∖ (α)_Δ for Δ = Δ(α, β).

        None when the two closures agree on a prefix of length at least r_Δ.
        """
        delta = self.delta(alpha, beta)
        left, right = self.closure(alpha, delta), self.closure(beta, delta)
        shared = common_prefix_length(left, right)
        if shared >= self.oracle.r(delta):
            return None
        return left[shared], right[shared]

    def rho_function(self, beta: Any, domain: Sequence[Any]) -> Dict[Any, int]:
        """ρ_β on the given domain."""
        return {xi: self.rho(xi, beta) for xi in domain}

    # Ξ

    def _xi(self, alpha: Any, k: int) -> int:
        """Piece index of α at level k, -1 inside the root.

        Raises:
            PreconditionViolation: k is negative.
            NonIntegerQuotient: the size difference is not a multiple of the block width.
        """
        if k < 0:
            raise PreconditionViolation(f"Ξ needs a level k >= 0, got {k}", alpha=alpha, k=k)
        if k == 0:
            return 0
        size = self.f(alpha, k)
        r = self.oracle.r(k)
        if size <= r:
            return -1
        width = self.oracle.m(k - 1) - r
        quotient, remainder = divmod(size - self.f(alpha, k - 1), width)
        if remainder:
            raise NonIntegerQuotient(
                f"Ξ quotient not integral at alpha={alpha}, k={k}", alpha=alpha, k=k
            )
        return quotient

    def increasing_bijection(self, alpha: Any, beta: Any, k: int) -> Dict[Any, Any]:
        """φ: (α)_k -> (β)_k, defined when the two closures have equal size."""
        source, target = self.closure(alpha, k), self.closure(beta, k)
        if len(source) != len(target):
            raise ValueError(f"closures at level {k} differ in size")
        return dict(zip(source, target))

    # f and oscillation

    def f_mod_finite_compare(self, alpha: Any, beta: Any) -> FComparison:
        """Compare f_α and f_β pointwise below ρ(α, β); strict from ρ onwards."""
        if alpha == beta:
            return FComparison(relation="equal")
        if beta < alpha:
            raise ValueError("f_mod_finite_compare expects alpha < beta")
        rho = self.rho(alpha, beta)
        rows = [[l, self.f(alpha, l), self.f(beta, l)] for l in range(rho)]
        strict_from = rho
        for l, fa, fb in reversed(rows):
            if fa < fb:
                strict_from = l
            else:
                break
        return FComparison(
            relation="lt_star",
            rho=rho,
            pointwise=rows,
            everywhere_leq=all(fa <= fb for _, fa, fb in rows),
            strict_from=strict_from,
        )

    def osc_witnesses(self, alpha: Any, beta: Any, k: int = 0) -> Tuple[int, ...]:
        """{s >= k : f_α(s) <= f_β(s) and f_α(s+1) > f_β(s+1)}."""
        if alpha == beta:
            return ()
        rho = self.rho(alpha, beta)
        found = []
        for s in range(k, rho):
            if self.f(alpha, s) <= self.f(beta, s) and self.f(alpha, s + 1) > self.f(beta, s + 1):
                found.append(s)
        return tuple(found)

    def osc(self, alpha: Any, beta: Any, k: int = 0) -> Tuple[int, Tuple[int, ...]]:
        """(|witnesses|, witnesses) of the oscillation above k."""
        witnesses = self.osc_witnesses(alpha, beta, k)
        return len(witnesses), witnesses

    def ultrametric_failures(self, window: int, limit: int = 5) -> List[Tuple[Any, Any, Any]]:
        """Triples with ρ(α,γ) > max(ρ(α,β), ρ(β,γ)); informational only."""
        found: List[Tuple[Any, Any, Any]] = []
        for a in range(window):
            for b in range(window):
                for c in range(window):
                    if len({a, b, c}) < 3:
                        continue
                    if self.rho(a, c) > max(self.rho(a, b), self.rho(b, c)):
                        found.append((a, b, c))
                        if len(found) >= limit:
                            return found
        return found
