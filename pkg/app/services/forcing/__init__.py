"""Finite approximations of the forcing that extends a scheme by one omega block."""

from .generic import Fragment, GenericBuilder
from .good import AcceptanceService, in_bl
from .poset import ForcingPoset
from .session import ForcingSession
from .universe import BaseUniverse, Universe, interval_lemma_failures, lift

__all__ = [
    "AcceptanceService",
    "BaseUniverse",
    "ForcingPoset",
    "ForcingSession",
    "Fragment",
    "GenericBuilder",
    "Universe",
    "in_bl",
    "interval_lemma_failures",
    "lift",
]
