"""Almost disjoint families, gaps and coherent families over a binary scheme.

All objects are evaluated level by level up to a truncation level K; the
block N_k of level k only depends on |(α)^-_k| and Ξ_α(k).
"""

from typing import Dict, List, Tuple

from ...models.constructions import Point, TruncatedFunction, TruncatedSet
from ...models.errors import PreconditionViolation
from .base import ConstructionBase


class FamilyService(ConstructionBase):
    """Luzin-Jones family, Hausdorff gap and Luzin coherent family."""

    # Luzin-Jones

    def luzin_jones_level(self, alpha: int, k: int) -> List[Point]:
        """A^k_α ⊆ N_k = {k} × m_{k-1} × (m_{k-1} - r_k)k for k >= 1."""
        xi = self.metrics.xi(alpha, k)
        p = self.position(alpha, k)
        m_prev, r = self.scheme.m(k - 1), self.scheme.r(k)
        if xi <= 0:
            return [(k, p, s) for s in range((m_prev - r) * k)]
        low = (p - m_prev) * k
        return [(k, i, s) for i in range(r, m_prev) for s in range(low, low + k)]

    def luzin_jones(self, alpha: int, K: int) -> TruncatedSet:
        """A_α cut at level K.

        Raises:
            NonBinaryType: the type branches into more than two pieces somewhere.
        """
        self.require_binary("Luzin-Jones family")
        points: List[Point] = []
        for k in range(1, K + 1):
            points.extend(self.luzin_jones_level(alpha, k))
        return TruncatedSet(elements=points, level=K)

    def jones_separator(self, beta: int, K: int) -> TruncatedSet:
        """C_β = ⋃_k ⋃_{α ∈ (β)_k} A^k_α cut at level K."""
        self.require_binary("Jones separator")
        points: List[Point] = []
        for k in range(1, K + 1):
            for alpha in self.scheme.closure(beta, k):
                points.extend(self.luzin_jones_level(alpha, k))
        return TruncatedSet(elements=points, level=K)

    # Hausdorff gap

    def gap_sets(self, alpha: int, K: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """(A_α, B_α) restricted to levels 1..K.

        A_α = {2k + Ξ_α(k)} and B_α = {2k + 1 - Ξ_α(k)} over k with Ξ_α(k) >= 0.
        """
        self.require_binary("Hausdorff gap")
        a, b = [], []
        for k in range(1, K + 1):
            xi = self.metrics.xi(alpha, k)
            if xi >= 0:
                a.append(2 * k + xi)
                b.append(2 * k + 1 - xi)
        return tuple(sorted(a)), tuple(sorted(b))

    # Luzin coherent family

    def coherent_family(self, alpha: int, K: int) -> TruncatedFunction:
        """f_α on T_α, both cut at level K.

        T_α is the union of the blocks N_k = {k} × r_k × r_k × k with
        Ξ_α(k) >= 0; f_α(k, i, j, s) is (α)_k(i) when Ξ_α(k) = 0 and
        (α)_k(j) when Ξ_α(k) = 1.
        """
        self.require_binary("Luzin coherent family")
        values: Dict[Point, int] = {}
        for k in range(1, K + 1):
            xi = self.metrics.xi(alpha, k)
            if xi < 0:
                continue
            closure = self.scheme.closure(alpha, k)
            r = self.scheme.r(k)
            for i in range(r):
                for j in range(r):
                    value = closure[i] if xi == 0 else closure[j]
                    for s in range(k):
                        values[(k, i, j, s)] = value
        return TruncatedFunction(values=values, level=K)

    def luzin_fiber_witness(self, xi: int, mu: int, alpha: int, beta: int) -> TruncatedSet:
        """The block {t} × {i} × {j} × t inside f_α^{-1}(ξ) ∩ f_β^{-1}(μ).

        Here t = ρ(α, β), i = |(ξ)^-_t| and j = |(μ)^-_t|.

        Raises:
            PreconditionViolation: ξ < μ < α < β fails, or ξ, μ are not in the
                root part of (α)_t.
        """
        self.require_binary("Luzin fiber witness")
        if not xi < mu < alpha < beta:
            raise PreconditionViolation(
                "fiber witness needs xi < mu < alpha < beta",
                xi=xi,
                mu=mu,
                alpha=alpha,
                beta=beta,
            )
        t = self.metrics.rho(alpha, beta)
        below = self.scheme.closure_minus(alpha, t)
        if xi not in below or mu not in below:
            raise PreconditionViolation(
                f"xi and mu must lie in (alpha)^-_{t}", xi=xi, mu=mu, t=t
            )
        if self.metrics.xi(xi, t) != -1 or self.metrics.xi(mu, t) != -1:
            raise PreconditionViolation(
                f"xi and mu must lie in the root at level {t}", xi=xi, mu=mu, t=t
            )
        i, j = self.position(xi, t), self.position(mu, t)
        return TruncatedSet(elements=[(t, i, j, s) for s in range(t)], level=t)

    # Z-sets

    def in_last_piece(self, alpha: int, k: int) -> bool:
        """Whether α lies in the last piece of its rank-k set (outside the root)."""
        if k == 0:
            return True
        return self.metrics.xi(alpha, k) == self.scheme.n(k) - 1

    def last_piece_levels(self, alpha: int, K: int) -> Tuple[int, ...]:
        """Levels 1..K at which α lies in the last piece."""
        return tuple(k for k in range(1, K + 1) if self.in_last_piece(alpha, k))
