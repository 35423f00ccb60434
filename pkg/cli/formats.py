"""
Text formats read and written by the command line.

Graph file:     `graph <k>`, then `v <id>` lines, then `e <u> <v> <color>` lines.
Patterns file:  `pattern <name>` opens a block of `v <id>` / `e <u> <v> <color>` lines.
Ops file:       `+ u v c`, `- u v`, `c u v c'`, `+v id`, `-v id`, `q name [isub|sub|hom]`.

Tokens are whitespace-separated and `#` starts a comment. Any error rejects
the whole input with the 1-based line number.
"""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from patterns.compiler import CountKind
from patterns.pattern import Pattern
from structures.colored_graph import ColoredGraph
from structures.errors import GraphError, PatternError, ScriptParseError


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


def _int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ScriptParseError(f"{what} must be an integer, got {token!r}", number) from None


def _arity(tokens: List[str], expected: int, number: int) -> None:
    if len(tokens) != expected:
        raise ScriptParseError(
            f"'{tokens[0]}' takes {expected - 1} arguments, got {len(tokens) - 1}", number
        )


# ==================== Graphs ====================

def parse_graph(text: str) -> ColoredGraph:
    graph: Optional[ColoredGraph] = None
    for number, tokens in _lines(text):
        keyword = tokens[0]
        if graph is None:
            if keyword != "graph":
                raise ScriptParseError("expected header 'graph <k>'", number)
            _arity(tokens, 2, number)
            k = _int(tokens[1], number, "color count")
            if k < 1:
                raise ScriptParseError(f"color count must be positive, got {k}", number)
            graph = ColoredGraph(k)
            continue
        try:
            if keyword == "v":
                _arity(tokens, 2, number)
                graph.add_vertex(_int(tokens[1], number, "vertex id"))
            elif keyword == "e":
                _arity(tokens, 4, number)
                u, v, c = (_int(t, number, "edge field") for t in tokens[1:])
                graph.add_edge(u, v, c)
            else:
                raise ScriptParseError(f"unknown graph line '{keyword}'", number)
        except GraphError as exc:
            raise ScriptParseError(str(exc), number) from exc
    if graph is None:
        raise ScriptParseError("missing header 'graph <k>'", 1)
    return graph


def write_graph(graph: ColoredGraph) -> str:
    lines = [f"graph {graph.k}"]
    lines.extend(f"v {v}" for v in sorted(graph.vertices()))
    lines.extend(f"e {u} {v} {c}" for u, v, c in sorted(graph.edges()))
    return "\n".join(lines) + "\n"


# ==================== Patterns ====================

def parse_patterns(text: str, k: Optional[int] = None) -> List[Tuple[str, Pattern]]:
    """(name, pattern) in file order; colors are checked against k when given."""
    blocks: List[Tuple[str, int, List[int], List[Tuple[int, int, int]]]] = []
    for number, tokens in _lines(text):
        keyword = tokens[0]
        if keyword == "pattern":
            _arity(tokens, 2, number)
            if any(name == tokens[1] for name, *_ in blocks):
                raise ScriptParseError(f"pattern {tokens[1]!r} defined twice", number)
            blocks.append((tokens[1], number, [], []))
            continue
        if not blocks:
            raise ScriptParseError("expected 'pattern <name>' before pattern lines", number)
        _, _, vertices, edges = blocks[-1]
        if keyword == "v":
            _arity(tokens, 2, number)
            v = _int(tokens[1], number, "vertex id")
            if v in vertices:
                raise ScriptParseError(f"vertex {v} declared twice", number)
            vertices.append(v)
        elif keyword == "e":
            _arity(tokens, 4, number)
            u, v, c = (_int(t, number, "edge field") for t in tokens[1:])
            if u not in vertices or v not in vertices:
                raise ScriptParseError(f"edge {{{u},{v}}} uses an undeclared vertex", number)
            if c < 1 or (k is not None and c > k):
                raise ScriptParseError(f"color {c} outside 1..{k if k is not None else 'k'}", number)
            edges.append((u, v, c))
        else:
            raise ScriptParseError(f"unknown pattern line '{keyword}'", number)

    result = []
    for name, number, vertices, edges in blocks:
        if not vertices:
            raise ScriptParseError(f"pattern {name!r} has no vertices", number)
        try:
            result.append((name, Pattern(vertices, edges)))
        except PatternError as exc:
            raise ScriptParseError(str(exc), number) from exc
    return result


# ==================== Operation scripts ====================

@dataclass(frozen=True)
class Op:
    kind: str
    args: Tuple
    line: int


class OpScript:
    """Ordered operations of an ops file."""

    KINDS = {"+": 4, "-": 3, "c": 4, "+v": 2, "-v": 2}

    def __init__(self, ops: List[Op]):
        self.ops = ops

    def __iter__(self) -> Iterator[Op]:
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    @classmethod
    def parse(cls, text: str) -> "OpScript":
        ops = []
        for number, tokens in _lines(text):
            keyword = tokens[0]
            if keyword == "q":
                if len(tokens) not in (2, 3):
                    raise ScriptParseError("'q' takes a pattern name and an optional count kind", number)
                kind = CountKind.INDUCED
                if len(tokens) == 3:
                    try:
                        kind = CountKind(tokens[2])
                    except ValueError:
                        raise ScriptParseError(f"unknown count kind {tokens[2]!r}", number) from None
                ops.append(Op("q", (tokens[1], kind), number))
            elif keyword in cls.KINDS:
                _arity(tokens, cls.KINDS[keyword], number)
                ops.append(Op(keyword, tuple(_int(t, number, "argument") for t in tokens[1:]), number))
            else:
                raise ScriptParseError(f"unknown operation '{keyword}'", number)
        return cls(ops)
