"""Derived combinatorial objects evaluated at finite truncation."""

from .base import ConstructionBase
from .colorings import ColoringService, OmegaPartition
from .entangled import EntangledService
from .families import FamilyService
from .independent import IndependentService
from .lattice import LatticeService
from .orders import OrderService
from .suslin import SuslinService
from .trees import FiniteTree, amalgamate, l_good, least_branch_through

__all__ = [
    "ConstructionBase",
    "ColoringService",
    "OmegaPartition",
    "EntangledService",
    "FamilyService",
    "IndependentService",
    "LatticeService",
    "OrderService",
    "SuslinService",
    "FiniteTree",
    "amalgamate",
    "l_good",
    "least_branch_through",
]
