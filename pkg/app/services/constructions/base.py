"""Shared plumbing for the construction services."""

from typing import Callable, Optional

from ...models.errors import NonBinaryType, TypeTooSmall
from ...utils.logging import LoggerMixin
from ..ordinal_metrics import MetricView
from ..scheme_engine import SchemeView


class ConstructionBase(LoggerMixin):
    """A scheme, its metric view and the type guards every construction uses."""

    def __init__(self, scheme: SchemeView, metrics: Optional[MetricView] = None):
        self.scheme = scheme
        self.metrics = metrics or MetricView(scheme)

    def require_binary(self, construction: str) -> None:
        """Raises NonBinaryType unless n_k = 2 at every level."""
        if not self.scheme.is_binary:
            raise NonBinaryType(
                f"{construction} needs a type with n_k = 2 at every level",
                type_name=self.scheme.spec.name,
            )

    def require_growth(
        self, construction: str, top: int, bound: Callable[[int], int], strict: bool = False
    ) -> None:
        """Raises TypeTooSmall at the first level k <= top where n_k misses bound(k)."""
        for k in range(1, top + 1):
            required, actual = bound(k), self.scheme.n(k)
            if actual < required or (strict and actual == required):
                raise TypeTooSmall(
                    f"{construction} needs n_{k} {'>' if strict else '>='} {required}, type has {actual}",
                    k=k,
                    required=required,
                    actual=actual,
                )

    def position(self, alpha: int, k: int) -> int:
        """|(α)^-_k|."""
        return len(self.scheme.closure(alpha, k)) - 1
