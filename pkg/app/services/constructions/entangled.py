"""An entangled family {f_α} ⊆ Z^ω ordered lexicographically."""

from functools import cmp_to_key
from typing import Sequence, Tuple

from ...models.errors import InvariantViolation, PreconditionViolation
from .base import ConstructionBase

LESS = "<"
GREATER = ">"


def subset_mask(index: int, width: int) -> int:
    """Mask of C_index among the subsets of a width-element set; index 1 is ∅."""
    return (index - 1) % (1 << width)


def lex_less(f: Sequence[int], g: Sequence[int]) -> bool:
    """f <_lex g at the first disagreement; False when the prefixes agree."""
    for x, y in zip(f, g):
        if x != y:
            return x < y
    return False


class EntangledService(ConstructionBase):
    """f_α(k) = ±Ξ_α(k), the sign chosen by |(α)^-_{k-1}| ∈ C^{k-1}_{Ξ_α(k)}."""

    def _require_type(self, top: int) -> None:
        self.require_growth(
            "entangled set", top, lambda k: 2 ** self.scheme.m(k - 1) + 1
        )

    def c_subset(self, k: int, index: int) -> Tuple[int, ...]:
        """C^k_index ⊆ m_k ∖ r_{k+1} for 0 < index < n_{k+1}, enumerated with wrap-around."""
        r = self.scheme.r(k + 1)
        width = self.scheme.m(k) - r
        mask = subset_mask(index, width)
        return tuple(r + j for j in range(width) if mask >> j & 1)

    def subset_index(self, k: int, subset: Sequence[int]) -> int:
        """The least 0 < i < n_{k+1} with C^k_i = subset.

        Raises:
            PreconditionViolation: subset is not contained in m_k ∖ r_{k+1}.
        """
        r, m = self.scheme.r(k + 1), self.scheme.m(k)
        if any(not r <= x < m for x in subset):
            raise PreconditionViolation(
                f"subset must lie in [{r}, {m})", k=k, subset=sorted(subset)
            )
        self._require_type(k + 1)
        return 1 + sum(1 << (x - r) for x in set(subset))

    def entangled_value(self, alpha: int, k: int) -> int:
        """f_α(k)."""
        if k == 0:
            return 0
        xi = self.metrics.xi(alpha, k)
        if xi <= 0:
            return 0
        chosen = self.position(alpha, k - 1) in self.c_subset(k - 1, xi)
        return xi if chosen else -xi

    def entangled_real(self, alpha: int, L: int) -> Tuple[int, ...]:
        """(f_α(0), ..., f_α(L-1)).

        Raises:
            TypeTooSmall: n_k < 2^{m_{k-1}} + 1 for some k < L.
        """
        self._require_type(L - 1)
        return tuple(self.entangled_value(alpha, k) for k in range(L))

    def compare(self, alpha: int, beta: int) -> int:
        """-1, 0 or 1 as f_α <_lex f_β, α = β or f_α >_lex f_β.

        Raises:
            InvariantViolation: f_α and f_β agree up to Δ(α, β).
        """
        if alpha == beta:
            return 0
        delta = self.metrics.delta(alpha, beta)
        self._require_type(delta)
        f = self.entangled_real(alpha, delta + 1)
        g = self.entangled_real(beta, delta + 1)
        if f == g:
            raise InvariantViolation(
                "entangled reals agree up to delta", alpha=alpha, beta=beta, delta=delta
            )
        return -1 if lex_less(f, g) else 1

    def ordinal_lex_less(self, alpha: int, beta: int) -> bool:
        return self.compare(alpha, beta) < 0

    def realizes_pattern(self, a: Sequence[int], b: Sequence[int]) -> Tuple[str, ...]:
        """T(a, b): with a and b enumerated increasingly in <_lex, '<' or '>' per index.

        Raises:
            PreconditionViolation: a and b differ in size or are not disjoint.
        """
        if len(a) != len(b) or set(a) & set(b) or len(set(a)) != len(a) or len(set(b)) != len(b):
            raise PreconditionViolation(
                "patterns need disjoint sets of equal size", a=list(a), b=list(b)
            )
        key = cmp_to_key(self.compare)
        left, right = sorted(a, key=key), sorted(b, key=key)
        return tuple(LESS if self.compare(x, y) < 0 else GREATER for x, y in zip(left, right))
