"""JSON, DOT and plain-table renderings of crystal graphs.

Output is deterministic: nodes in element order, edges sorted, keys sorted.
"""
from __future__ import annotations

import json
import math

from .crystal import OUT, Crystal, GraphCrystal
from .partcomp import NEG_INF, PartLabel


def _eps_json(x):
    if x is NEG_INF or x == -math.inf:
        return "-inf"
    if isinstance(x, PartLabel):
        return x.to_json()
    return [x] if x else []


def _phi_json(x):
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    return int(x)


def _ids(C: Crystal) -> dict:
    return {b: k for k, b in enumerate(C.elements())}


def edges(C: Crystal) -> list[tuple[int, int, int, int]]:
    ids = _ids(C)
    out = []
    for b in C.elements():
        for (i, l) in C.indices():
            y = C.f(b, i, l)
            if y is None or y is OUT or y not in ids:
                continue
            out.append((ids[b], ids[y], i, l))
    return sorted(out)


def to_dict(C: Crystal) -> dict:
    q = C.q
    ids = _ids(C)
    names = getattr(C, "names", {}) or {}
    nodes = []
    for b in C.elements():
        node = {
            "id": ids[b],
            "wt": list(C.wt(b)),
            "eps": {q.names[i]: _eps_json(C.eps(b, i)) for i in q.vertices},
            "phi": {q.names[i]: _phi_json(C.phi(b, i)) for i in q.vertices},
        }
        if b in names:
            node["name"] = names[b]
        nodes.append(node)
    src = getattr(C, "source", None)
    return {
        "quiver": q.label or q.describe(),
        "bound": C.bound,
        "nodes": nodes,
        "edges": [{"from": a, "to": b, "i": q.names[i], "l": l} for a, b, i, l in edges(C)],
        "source": ids.get(src) if src is not None else None,
    }


def to_json(C: Crystal) -> str:
    return json.dumps(to_dict(C), sort_keys=True, indent=1) + "\n"


def to_dot(C: Crystal) -> str:
    q = C.q
    ids = _ids(C)
    names = getattr(C, "names", {}) or {}
    lines = ["digraph crystal {", "  rankdir=TB;"]
    for b in C.elements():
        label = names.get(b, str(ids[b]))
        lines.append(f'  n{ids[b]} [label="{label}\\nwt={list(C.wt(b))}"];')
    for a, b, i, l in edges(C):
        lines.append(f'  n{a} -> n{b} [label="f[{q.names[i]},{l}]"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fmt_eps(x) -> str:
    if x is NEG_INF or x == -math.inf:
        return "-inf"
    return repr(x) if isinstance(x, PartLabel) else str(x)


def to_table(C: Crystal) -> str:
    q = C.q
    ids = _ids(C)
    names = getattr(C, "names", {}) or {}
    rows = []
    for b in C.elements():
        eps = " ".join(f"{q.names[i]}:{_fmt_eps(C.eps(b, i))}" for i in q.vertices)
        phi = " ".join(f"{q.names[i]}:{_phi_json(C.phi(b, i))}" for i in q.vertices)
        rows.append(f"{ids[b]:>4}  {names.get(b, ''):<28} wt={list(C.wt(b))}  eps[{eps}]  phi[{phi}]")
    return "\n".join(rows) + "\n"


def render(C: GraphCrystal, fmt: str) -> str:
    if fmt == "json":
        return to_json(C)
    if fmt == "dot":
        return to_dot(C)
    return to_table(C)
