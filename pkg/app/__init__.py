"""
Construction Schemes Engine

Materializes construction schemes over initial segments of the countable
ordinals, evaluates the ordinal metric and the constructions derived from it,
runs a finite forcing lab and checks the structural lemmas on finite windows.
"""

__version__ = "1.0.0"
__author__ = "Construction Schemes Team"
__description__ = "Construction schemes, ordinal metrics and their derived objects"
