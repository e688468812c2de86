"""Property suites that check the engine's structural lemmas on finite windows."""

from .base import SuiteContext, Tally
from .registry import ALL_SUITES, SUITES, SuiteDefinition, VerificationService

__all__ = [
    "ALL_SUITES",
    "SUITES",
    "SuiteContext",
    "SuiteDefinition",
    "Tally",
    "VerificationService",
]
