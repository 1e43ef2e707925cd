"""Plain-text edge lists: a header line ``n m`` followed by ``m`` lines ``u v``.

Blank lines are ignored and ``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

from .graph import Graph


class EdgeListError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _ints(text: str, lineno: int, want: int, what: str) -> list[int]:
    parts = text.split()
    if len(parts) != want:
        raise EdgeListError(f"{what}: expected {want} integers, got {len(parts)}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise EdgeListError(f"{what}: not an integer in {text.strip()!r}", lineno) from None


def parse_edge_list(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body))
    if not rows:
        raise EdgeListError("missing header 'n m'", 1)
    head_line, head = rows[0]
    n, m = _ints(head, head_line, 2, "malformed header")
    if n < 0 or m < 0:
        raise EdgeListError("malformed header: negative count", head_line)
    body = rows[1:]
    if len(body) != m:
        last = body[-1][0] if body else head_line
        raise EdgeListError(f"header declares {m} edges but body has {len(body)}", last)
    seen: set[tuple[int, int]] = set()
    for lineno, row in body:
        u, v = _ints(row, lineno, 2, "malformed edge")
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"vertex out of range in edge {u} {v} (n = {n})", lineno)
        if u == v:
            raise EdgeListError(f"self-loop on vertex {u}", lineno)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise EdgeListError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
    return Graph(n, seen)


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, highlight=(), name: str = "G") -> str:
    """Graphviz text; ``highlight`` edges are drawn bold."""
    marked = {tuple(sorted(e)) for e in highlight}
    out = [f"graph {name} {{"]
    out.extend(f"  {v};" for v in range(g.n))
    for u, v in g.sorted_edges():
        style = " [style=bold, color=red]" if (u, v) in marked else ""
        out.append(f"  {u} -- {v}{style};")
    out.append("}")
    return "\n".join(out) + "\n"
