"""Coloring algorithms, their result containers, and the validator."""

from .base import Coloring, FractionalColoring, ValidationReport, validate
from .fractional import InfeasibleError, RegionSystem, color_fractional, color_fractional_simulated
from .listcolor import color_568, color_greedy_baseline, high_degree_vertices, palette_568
from .strip import StripPreconditionError, color_strip
from .stripes import color_4omega, color_4omega_central, region_tag

__all__ = [
    "Coloring", "FractionalColoring", "ValidationReport", "validate",
    "InfeasibleError", "RegionSystem", "color_fractional", "color_fractional_simulated",
    "color_568", "color_greedy_baseline", "high_degree_vertices", "palette_568",
    "StripPreconditionError", "color_strip",
    "color_4omega", "color_4omega_central", "region_tag",
]
