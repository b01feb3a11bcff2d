"""DOT output for heaps and cylindric heaps."""

from __future__ import annotations

from .cylindric import BASE, cylindric_transform
from .heaps import Heap


def _header(name):
    return [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]


def _nodes(h: Heap):
    return [f'  p{i} [label="{i}:{h.sys.names[lab]}"];' for i, lab in enumerate(h.labels)]


def heap_dot(h: Heap) -> str:
    """Hasse diagram of the heap order, nodes labelled ``i:generator``."""
    lines = _header("heap") + _nodes(h)
    lines += [f"  p{i} -> p{j};" for i, j in h.covers()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cylindric_dot(h: Heap) -> str:
    """Chain covers as solid edges, wrap edges dashed."""
    ch = cylindric_transform(h.sys, h)
    lines = _header("cylindric_heap") + _nodes(h)
    for i, j, tag in sorted(ch.edges, key=lambda e: (e[2] != BASE, e[0], e[1])):
        style = "" if tag == BASE else " [style=dashed]"
        lines.append(f"  p{i} -> p{j}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
