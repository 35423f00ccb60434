"""
Services module for the counting index.

Provides text-in, JSON-out counting functions for the MCP server.
"""
