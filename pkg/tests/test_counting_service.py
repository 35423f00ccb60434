"""
Test the counting service and the MCP server exposing it
"""
import json
from pathlib import Path

import pytest
import pytest_asyncio
from mcp import ClientSession, StdioServerParameters
from mcp.client.stdio import stdio_client

from services import counting

TRIANGLE = {"isub": 6, "sub": 6, "hom": 6}
PATH = {"isub": 0, "sub": 6, "hom": 12}


class TestCountingService:

    def test_dynamic_counts(self, graph_text, patterns_text):
        result = counting.count_patterns(graph_text, patterns_text)
        assert result["mode"] == "dynamic"
        assert result["counts"] == {"tri": TRIANGLE, "p3": PATH}
        assert result["h"] == 1
        assert result["engines"] > 0

    def test_oracle_counts(self, graph_text, patterns_text):
        result = counting.count_patterns(graph_text, patterns_text, mode="oracle")
        assert result == {"mode": "oracle", "counts": {"tri": TRIANGLE, "p3": PATH}}

    def test_unknown_mode(self, graph_text, patterns_text):
        assert "error" in counting.count_patterns(graph_text, patterns_text, mode="fast")

    def test_parse_error_payload(self, patterns_text):
        result = counting.count_patterns("graph 1\ne 0 1\n", patterns_text)
        assert result["type"] == "ScriptParseError"
        assert "line 2" in result["error"]

    def test_size_guard_payload(self, graph_text, patterns_text):
        result = counting.count_patterns(graph_text, patterns_text, max_pattern_size=2)
        assert result["type"] == "PatternGuardError"

    def test_compile_summary(self, patterns_text):
        summary = counting.compile_summary(patterns_text)
        assert set(summary) == {"tri", "p3"}
        assert summary["tri"]["supergraphs"] == 1
        assert summary["p3"]["supergraphs"] == 2

    def test_oracle_check(self, graph_text, patterns_text):
        result = counting.oracle_check(graph_text, patterns_text)
        assert result["ok"] is True
        assert result["mismatches"] == []
        assert result["counts"]["tri"] == TRIANGLE


class TestCountingServer:

    @pytest_asyncio.fixture
    async def counting_session(self):
        """Create a session connected to the counting server."""
        server_path = Path(__file__).parent.parent / "mcp_servers" / "counting_server.py"

        server_params = StdioServerParameters(
            command="fastmcp",
            args=["run", str(server_path), "--transport", "stdio", "--no-banner"]
        )

        async with stdio_client(server_params) as (stdio, write):
            async with ClientSession(stdio, write) as session:
                await session.initialize()
                yield session

    @pytest.mark.asyncio
    async def test_tools_registered(self, counting_session):
        tools = await counting_session.list_tools()
        names = {tool.name for tool in tools.tools}
        assert names == {"count_patterns", "compile_patterns", "check_against_oracle"}

    @pytest.mark.asyncio
    async def test_count_patterns(self, counting_session, graph_text, patterns_text):
        result = await counting_session.call_tool("count_patterns", {
            "graph": graph_text,
            "patterns": patterns_text,
        })
        assert result.isError is False, f"count_patterns should not error: {result.content}"
        payload = json.loads(result.content[0].text)
        assert payload["counts"]["tri"] == TRIANGLE

    @pytest.mark.asyncio
    async def test_compile_patterns_rejects_colors(self, counting_session, patterns_text):
        result = await counting_session.call_tool("compile_patterns", {"patterns": patterns_text, "colors": 0})
        payload = json.loads(result.content[0].text)
        assert "error" in payload

    @pytest.mark.asyncio
    async def test_check_against_oracle(self, counting_session, graph_text, patterns_text):
        result = await counting_session.call_tool("check_against_oracle", {
            "graph": graph_text,
            "patterns": patterns_text,
        })
        payload = json.loads(result.content[0].text)
        assert payload["ok"] is True

    @pytest.mark.asyncio
    async def test_config_lists_registered_tools(self, counting_session):
        config_path = Path(__file__).parent.parent / "config" / "mcp_servers.json"
        config = json.loads(config_path.read_text())
        server = config["mcpServers"]["isub-counting"]
        tools = await counting_session.list_tools()
        assert sorted(server["tools"]) == sorted(tool.name for tool in tools.tools)
        assert config["metadata"]["total_tools"] == len(tools.tools)
