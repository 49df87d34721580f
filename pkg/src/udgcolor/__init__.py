"""Unit-disk graphs, their distributed colorings, and the degree bounds behind them."""

from .coloring import (Coloring, FractionalColoring, color_4omega, color_568, color_fractional,
                       color_greedy_baseline, color_strip, validate)
from .estimators import (DegreeSplitColoring, FractionalStripeColoring, GreedyListColoring,
                         StripeColoring, UnitDiskAdjacency)
from .udg import (UnitDiskGraph, WeightedPointSet, build_graph, clique_number,
                  disk_clique_number, structural_checks)

__version__ = "0.1.0"

__all__ = [
    "Coloring", "FractionalColoring", "color_4omega", "color_568", "color_fractional",
    "color_greedy_baseline", "color_strip", "validate",
    "DegreeSplitColoring", "FractionalStripeColoring", "GreedyListColoring", "StripeColoring",
    "UnitDiskAdjacency",
    "UnitDiskGraph", "WeightedPointSet", "build_graph", "clique_number", "disk_clique_number",
    "structural_checks",
]
