"""Graphviz export of Hasse diagrams."""

import re

from .poset import Poset, levels, transitive_reduction


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(p: Poset, name: str = "poset") -> str:
    """Hasse diagram of ``p`` with one rank per height, lowest level at the bottom."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for k, level in enumerate(levels(p)):
        members = " ".join(_quote(x) + ";" for x in level)
        lines.append(f"  {{ rank=same; /* height {k} */ {members} }}")
    for a, b in transitive_reduction(p):
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot_edges(text: str) -> list[tuple[str, str]]:
    """Edges of a DOT document written by :func:`export_dot`."""
    edge = re.compile(r'^\s*"((?:[^"\\]|\\.)*)" -> "((?:[^"\\]|\\.)*)";$')
    out = []
    for line in text.splitlines():
        m = edge.match(line)
        if m:
            out.append((m.group(1), m.group(2)))
    return out
