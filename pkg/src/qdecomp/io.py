"""Graph file readers/writers: DIMACS clique format and plain edge lists."""
from __future__ import annotations

from pathlib import Path

from .graph import Graph, GraphError


class ParseError(ValueError):
    """Malformed graph file. Carries the offending line number."""

    def __init__(self, msg: str, lineno: int | None = None):
        if lineno is not None:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)
        self.lineno = lineno


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_dimacs(text: str) -> Graph:
    """Parse ``p edge N M`` / ``e u v`` (1-based) into labels ``u-1``."""
    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise ParseError(f"bad problem line {line.strip()!r}", lineno)
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            n, _ = _ints(tok[2:], lineno)
        elif tok[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(tok) != 3:
                raise ParseError(f"bad edge line {line.strip()!r}", lineno)
            u, v = _ints(tok[1:], lineno)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge N M' line")
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise ParseError(f"invalid DIMACS graph: {exc}") from None


def parse_edgelist(text: str) -> Graph:
    """Parse 0-based ``u v`` lines; optional ``n N`` header fixes the vertex
    count, otherwise ``n = max label + 1``."""
    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        tok = line.split()
        if not tok:
            continue
        if tok[0] == "n":
            if len(tok) != 2 or n is not None or edges:
                raise ParseError("'n N' header must appear once, before edges", lineno)
            (n,) = _ints(tok[1:], lineno)
            continue
        if len(tok) != 2:
            raise ParseError(f"expected 'u v', got {line.strip()!r}", lineno)
        u, v = _ints(tok, lineno)
        if u < 0 or v < 0:
            raise ParseError(f"negative label in {line.strip()!r}", lineno)
        edges.append((u, v))
    if n is None:
        n = max((max(e) for e in edges), default=-1) + 1
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise ParseError(f"invalid edge list: {exc}") from None


def read_graph(path, fmt: str | None = None) -> Graph:
    path = Path(path)
    if fmt is None:
        fmt = "dimacs" if path.suffix in (".clq", ".col", ".dimacs") else "edgelist"
    text = path.read_text()
    if fmt == "dimacs":
        return parse_dimacs(text)
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def format_edgelist(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"{u} {v}" for u, v in g.labeled_edges()]
    return "\n".join(lines) + "\n"


def format_dimacs(g: Graph) -> str:
    if list(g.labels) != list(range(g.n)):
        raise GraphError("DIMACS output needs labels 0..n-1")
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.labeled_edges()]
    return "\n".join(lines) + "\n"
