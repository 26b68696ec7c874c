"""
DOT export of bipartite graphs: part A on the source rank, part B on the sink rank.
"""


def _quote(label):
    return '"' + str(label).replace('\\', '\\\\').replace('"', '\\"') + '"'


def export_dot(g, name='G'):
    """Render g as an undirected DOT graph; output is byte-stable for equal graphs."""
    lines = [f"graph {_quote(name)} {{", "  rankdir=TB;"]
    lines.append("  { rank=source; " + " ".join(_quote(v) + ";" for v in g.part_a) + " }")
    lines.append("  { rank=sink; " + " ".join(_quote(v) + ";" for v in g.part_b) + " }")
    for v in g.part_a:
        lines.append(f"  {_quote(v)} [part=A];")
    for v in g.part_b:
        lines.append(f"  {_quote(v)} [part=B];")
    for a, b in g.sorted_edges():
        lines.append(f"  {_quote(a)} -- {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
