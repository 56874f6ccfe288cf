"""DOT rendering of dual graphs: self-intersections on nodes, chains as clusters."""

from mmp.model import DualGraphModel, recognize_chain

FLIP_MARK = "⊖"
PLUS_MARK = "⊕"


def _node(g: DualGraphModel, curve_id: int, indent: str) -> str:
    curve = g.curve(curve_id)
    text = str(curve.self_int)
    if curve.genus:
        text += f" g={curve.genus}"
    if curve_id == g.flip_mark:
        text += f" {FLIP_MARK}"
    if curve_id in g.plus_marks:
        text += f" {PLUS_MARK}"
    if curve.label:
        text += f" {curve.label}"
    text = text.replace('"', '\\"')
    return f'{indent}c{curve_id} [label="{text}"];'


def export_dot(g: DualGraphModel, name: str = "model") -> str:
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    in_chain = set()
    for index, chain in enumerate(g.chains):
        w = recognize_chain(g.chain_entries(index))
        lines.append(f"  subgraph cluster_chain_{index} {{")
        lines.append(f'    label="{w if w else "chain"}";')
        for cid in chain:
            lines.append(_node(g, cid, "    "))
            in_chain.add(cid)
        lines.append("  }")
    for curve in g.curves:
        if curve.id not in in_chain:
            lines.append(_node(g, curve.id, "  "))
    for a, b, mult in g.edges:
        attrs = f' [mult={mult}, label="{mult}", penwidth={mult}]' if mult > 1 else ""
        lines.append(f"  c{a} -- c{b}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
