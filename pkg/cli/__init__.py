"""Command-line frontend: run, compile and bench."""

from .formats import OpScript, parse_graph, parse_patterns, write_graph
from .main import main

__all__ = ["OpScript", "main", "parse_graph", "parse_patterns", "write_graph"]
