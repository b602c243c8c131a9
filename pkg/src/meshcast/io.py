"""Canonical text forms for networks, trees, assignments, weighted graphs and path results.

JSON documents are written with sorted keys, two-space indent and a trailing
newline, so equal objects always serialize to identical bytes. Node ids are
kept as JSON ints or strings; per-node tables are lists of ``[node, value]``
pairs because JSON object keys would turn integer ids into strings.
"""
from __future__ import annotations

import json
import os
import tempfile
from importlib import resources
from pathlib import Path

from .dspcnn import PathResult, WeightedGraph
from .multicast import ChannelAssignment, MulticastTree
from .topology import MeshNetwork


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _node(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValueError(f"node ids must be int or str, got {v!r}")
    return v


def network_to_dict(net: MeshNetwork) -> dict:
    doc = {
        "nodes": [{"id": u, "x": net.positions[u][0], "y": net.positions[u][1]} for u in net.nodes],
        "range": net.comm_range,
        "source": net.source,
        "receivers": sorted(net.receivers),
    }
    if net.explicit_edges:
        doc["edges"] = [list(e) for e in sorted(net.edges)]
    return doc


def network_from_dict(doc: dict) -> MeshNetwork:
    positions = {_node(n["id"]): (n["x"], n["y"]) for n in doc["nodes"]}
    edges = doc.get("edges")
    if edges is not None:
        edges = [(_node(u), _node(v)) for u, v in edges]
    return MeshNetwork.build(positions, doc["range"], _node(doc["source"]),
                             [_node(r) for r in doc.get("receivers", [])], edges)


def tree_to_dict(tree: MulticastTree) -> dict:
    return {
        "source": tree.source,
        "receivers": sorted(tree.receivers),
        "edges": [[c, p] for c, p in sorted(tree.parent_of.items())],
        "relays": sorted(tree.relay_set),
    }


def tree_from_dict(doc: dict) -> MulticastTree:
    parent_of = {_node(c): _node(p) for c, p in doc["edges"]}
    return MulticastTree(_node(doc["source"]), frozenset(_node(r) for r in doc["receivers"]), parent_of)


def assignment_to_dict(a: ChannelAssignment) -> dict:
    return {
        "channels": a.channel_count,
        "ri": [[u, c] for u, c in sorted(a.ri.items())],
        "si": [[u, c] for u, c in sorted(a.si.items())],
    }


def assignment_from_dict(doc: dict) -> ChannelAssignment:
    return ChannelAssignment(
        {_node(u): int(c) for u, c in doc["ri"]},
        {_node(u): int(c) for u, c in doc["si"]},
        int(doc["channels"]),
    )


def fixture_network(name: str) -> MeshNetwork:
    """Load one of the bundled hand-built fixtures (``fig1``, ``fig3``)."""
    ref = resources.files("meshcast") / "fixtures" / f"{name}.json"
    if not ref.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return network_from_dict(json.loads(ref.read_text()))


def _fmt_num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def write_edge_list(graph: WeightedGraph) -> str:
    lines = [f"{graph.n} {graph.m} {graph.source} {graph.goal}"]
    lines += [f"{u} {v} {_fmt_num(w)}" for u, v, w in graph.edges]
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> WeightedGraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 4:
        raise ValueError("edge list must start with a header line 'n m s g'")
    n, m, s, g = (int(x) for x in rows[0])
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for k, row in enumerate(body, start=2):
        if len(row) != 3:
            raise ValueError(f"line {k}: expected 'u v length'")
        edges.append((int(row[0]), int(row[1]), float(row[2])))
    return WeightedGraph(n, tuple(edges), s, g)


def format_path_result(res: PathResult) -> str:
    return f"{_fmt_num(res.length)} {res.fired_count} {' '.join(str(v) for v in res.path)}\n"


def parse_path_result(line: str, solver: str = "") -> PathResult:
    parts = line.split()
    return PathResult(tuple(int(v) for v in parts[2:]), float(parts[0]), int(parts[1]), solver)


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` through a temp file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
