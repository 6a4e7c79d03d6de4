"""Graph text format, canonical serialization and DOT export.

The graph format is line based::

    # comment
    vertices: A B C
    edge: A -> B
    edge: B -> A

Vertices must be declared before an edge mentions them. Duplicate vertex
declarations, duplicate edges and self-loops are errors.
"""

from __future__ import annotations

import json
import re

from dcg.errors import GraphError
from dcg.graph import NAME_RE, DirectedGraph

_EDGE_RE = re.compile(r"([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)\Z")


class ParseError(GraphError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_graph(text: str) -> DirectedGraph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    vertices: list[str] = []
    declared: set[str] = set()
    edges: list[tuple[str, str]] = []
    seen_edges: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("vertices", "edge"):
            raise ParseError(lineno, f"expected 'vertices:' or 'edge:', got {line!r}")
        if key == "vertices":
            for name in rest.split():
                if not NAME_RE.match(name):
                    raise ParseError(lineno, f"invalid vertex name {name!r}")
                if name in declared:
                    raise ParseError(lineno, f"duplicate vertex {name!r}")
                declared.add(name)
                vertices.append(name)
            continue
        m = _EDGE_RE.match(rest.strip())
        if m is None:
            raise ParseError(lineno, f"malformed edge {rest.strip()!r}, expected 'NAME -> NAME'")
        tail, head = m.groups()
        for end in (tail, head):
            if end not in declared:
                raise ParseError(lineno, f"edge names undeclared vertex {end!r}")
        if tail == head:
            raise ParseError(lineno, f"self-loop on {tail!r}")
        if (tail, head) in seen_edges:
            raise ParseError(lineno, f"duplicate edge {tail} -> {head}")
        seen_edges.add((tail, head))
        edges.append((tail, head))
    return DirectedGraph(vertices, edges)


def read_graph(path: str) -> DirectedGraph:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphError(f"{path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise GraphError(f"{path}: not UTF-8 text") from None
    try:
        return parse_graph(text)
    except ParseError as exc:
        raise GraphError(f"{path}: {exc}") from None


def serialize_graph(g: DirectedGraph) -> str:
    lines = ["vertices:" + "".join(" " + v for v in g.vertices)]
    lines += [f"edge: {t} -> {h}" for t, h in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def export_dot(g: DirectedGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f'  "{v}";' for v in g.vertices]
    lines += [f'  "{t}" -> "{h}";' for t, h in g.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
