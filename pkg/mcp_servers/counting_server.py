#!/usr/bin/env python3
"""
Pattern Counting Server - FastMCP Implementation
Provides exact pattern counting tools over small colored graphs:
- Induced subgraph, subgraph and homomorphism counts
- Plan summaries for query patterns
- Brute-force cross-checks
"""

import json
import logging
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from fastmcp import FastMCP

from services import counting

logger = logging.getLogger("isub.server")

# Create FastMCP server
mcp = FastMCP("isub-counting")


@mcp.tool()
async def count_patterns(graph: str, patterns: str, mode: str = "dynamic") -> str:
    """
    Count induced subgraphs, subgraphs and homomorphisms of each pattern.

    Args:
        graph: Host graph text: 'graph <k>' header, 'v <id>' and 'e <u> <v> <color>' lines
        patterns: Pattern blocks: 'pattern <name>' followed by 'v'/'e' lines
        mode: 'dynamic' (counting index) or 'oracle' (brute force)
    """
    return json.dumps(counting.count_patterns(graph, patterns, mode), indent=2)


@mcp.tool()
async def compile_patterns(patterns: str, colors: int = 1) -> str:
    """
    Summarize the compiled plans: term count, augmented set sizes and clan counts.

    Args:
        patterns: Pattern blocks
        colors: Number of edge colors
    """
    if colors < 1:
        return json.dumps({"error": "colors must be at least 1", "provided_colors": colors}, indent=2)
    return json.dumps(counting.compile_summary(patterns, colors), indent=2)


@mcp.tool()
async def check_against_oracle(graph: str, patterns: str) -> str:
    """
    Count with the index and by brute force and report any difference.

    Args:
        graph: Host graph text (at most 40 vertices)
        patterns: Pattern blocks
    """
    return json.dumps(counting.oracle_check(graph, patterns), indent=2)


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    mcp.run()
