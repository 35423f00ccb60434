# Pattern counting MCP server
# FastMCP implementation over services.counting
