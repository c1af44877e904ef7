"""Symmetric powers of graphs: constructions, exact spectra and search tools."""
from __future__ import annotations

from .graphcore import Graph, parse_graph6, write_graph6
from .sympower import symmetric_power_subsets

__version__ = "0.1.0"

__all__ = ["Graph", "parse_graph6", "write_graph6", "symmetric_power_subsets", "__version__"]
