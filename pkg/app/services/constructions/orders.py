"""The Countryman order <_F and the special Aronszajn tree of ρ-functions."""

from typing import Dict, List, Mapping, Optional, Tuple

from ...models.constructions import AronszajnNode
from ...models.errors import InvariantViolation, PreconditionViolation
from .base import ConstructionBase


class OrderService(ConstructionBase):
    """Countryman line and special tree built from closures and ρ."""

    # Countryman line

    def countryman_less(self, alpha: int, beta: int) -> bool:
        """Whether α <_F β; False when α = β.

        With Δ = Δ(α, β): if (α)_Δ ∩ (β)_Δ has at least r_Δ elements the
        order compares |(α)_Δ| and |(β)_Δ|; otherwise it recurses on the
        least elements of (α)_Δ ∖ (β)_Δ and (β)_Δ ∖ (α)_Δ, both of which lie
        below max(α, β).

        Raises:
            InvariantViolation: the recursion failed to descend.
        """
        if alpha == beta:
            return False
        while True:
            delta = self.metrics.delta(alpha, beta)
            nxt = self.metrics.delta_min_difference(alpha, beta)
            if nxt is None:
                return self.metrics.f(alpha, delta) < self.metrics.f(beta, delta)
            if max(nxt) >= max(alpha, beta) or nxt[0] == nxt[1]:
                raise InvariantViolation(
                    "countryman recursion did not descend",
                    alpha=alpha,
                    beta=beta,
                    delta=delta,
                )
            alpha, beta = nxt

    def countryman_chain_index(self, alpha: int, beta: int) -> Tuple[int, int, int]:
        """The label (|(α)_z|, |(β)_z|, z) with z = ρ(α, β) of the chain holding (α, β).

        Raises:
            PreconditionViolation: α >= β.
        """
        if not alpha < beta:
            raise PreconditionViolation("chain index needs alpha < beta", alpha=alpha, beta=beta)
        z = self.metrics.rho(alpha, beta)
        return (
            len(self.scheme.closure(alpha, z)),
            len(self.scheme.closure(beta, z)),
            z,
        )

    def chain_table(self, window: int) -> List[List[int]]:
        """Rows [α, β, x, y, z] for every α < β < window."""
        rows = []
        for beta in range(window):
            for alpha in range(beta):
                rows.append([alpha, beta, *self.countryman_chain_index(alpha, beta)])
        return rows

    def lemma_pair_witnesses(self, alpha: int, beta: int) -> List[Tuple[int, int]]:
        """Pairs (γ, φ(γ)) with γ ∈ (α)_{Δ-1} moved by the increasing bijection to (β)_{Δ-1}."""
        delta = self.metrics.delta(alpha, beta)
        phi = self.metrics.increasing_bijection(alpha, beta, delta - 1)
        return [(gamma, image) for gamma, image in phi.items() if gamma != image]

    # Special Aronszajn tree

    def rho_table(self, beta: int) -> Tuple[int, ...]:
        """ρ_β on β + 1."""
        return tuple(self.metrics.rho(xi, beta) for xi in range(beta + 1))

    def aronszajn_node(
        self, beta: int, modifications: Optional[Mapping[int, int]] = None
    ) -> AronszajnNode:
        """The node f with dom(f) = β + 1, f = ρ_β off ``modifications``, and its label.

        k_f is the least k with f = ρ_β outside (β)_k and f <= k on (β)_k;
        s = |(β)_{k_f}|.

        Raises:
            PreconditionViolation: a modification lies outside β + 1.
        """
        changes: Dict[int, int] = dict(modifications or {})
        for xi, value in changes.items():
            if not 0 <= xi <= beta or value < 0:
                raise PreconditionViolation(
                    "modifications must map ordinals <= beta to naturals", xi=xi, value=value
                )
        rho = self.rho_table(beta)
        table = tuple(changes.get(xi, rho[xi]) for xi in range(beta + 1))
        differing = {xi for xi in range(beta + 1) if table[xi] != rho[xi]}
        k = 0
        while True:
            closure = self.scheme.closure(beta, k)
            members = set(closure)
            if differing <= members and all(table[xi] <= k for xi in closure):
                break
            k += 1
        self.log_debug("Labelled tree node", beta=beta, k=k)
        return AronszajnNode(beta=beta, table=table, k=k, s=len(self.scheme.closure(beta, k)))

    def rho_coherence_failures(self, alpha: int, beta: int) -> List[int]:
        """ξ ∈ (α+1) ∖ (α)_{ρ(α,β)} with ρ_α(ξ) ≠ ρ_β(ξ); empty for a valid scheme."""
        closure = set(self.scheme.closure(alpha, self.metrics.rho(alpha, beta)))
        return [
            xi
            for xi in range(alpha + 1)
            if xi not in closure and self.metrics.rho(xi, alpha) != self.metrics.rho(xi, beta)
        ]

    @staticmethod
    def antichain_separated(f: AronszajnNode, g: AronszajnNode) -> bool:
        """For equal labels and β_f < β_g: f(β_f) <= k < g(β_f)."""
        if (f.k, f.s) != (g.k, g.s) or f.beta == g.beta:
            return True
        low, high = (f, g) if f.beta < g.beta else (g, f)
        return low.table[low.beta] <= low.k < high.table[low.beta]
