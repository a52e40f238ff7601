"""Construction and exhaustive verification of exactly-colored witness
graphs: finite edge colorings using exactly c colors in which no induced
subgraph uses exactly m colors."""

__version__ = "0.1.0"

from .graphcore import ColoredGraph, color_census, load, save, validate_exact
from .oracle import WitnessReport, census_histogram, find_exactly_m_subset, verify_lifted, verify_witness

__all__ = [
    "ColoredGraph",
    "WitnessReport",
    "census_histogram",
    "color_census",
    "find_exactly_m_subset",
    "load",
    "save",
    "validate_exact",
    "verify_lifted",
    "verify_witness",
    "__version__",
]
