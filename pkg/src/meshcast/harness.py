"""Scenario-driven pipeline: generate -> level -> tree -> assign -> simulate, plus shortest paths.

A scenario is a JSON document::

    {
      "id": "demo",
      "network": {"generate": {"n": 30, "side": 1000, "range": 250,
                               "receivers": 5, "seed": 42}},
      "tree": {"algorithm": "mcm"},
      "assign": {"algorithm": "heuristic", "channels": 3, "delta": 0.5},
      "simulate": {"slots": 1000, "rate": 1.0, "seed": 0},
      "sp": {"goal": 7, "mode": "hops", "solvers": ["dspcnn", "pcnn", "dijkstra"]},
      "sweep": {"seeds": {"start": 0, "count": 100}, "channels": [1, 3]}
    }

``network`` may instead be ``{"fixture": "fig1"}``, ``{"file": "net.json"}``
(relative to the scenario file) or ``{"inline": {...network document...}}``.
Every random choice is driven by an explicit seed in the file.
"""
from __future__ import annotations

import copy
import csv
import io as _io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io
from .dspcnn import dijkstra_oracle, dspcnn_shortest_path, mesh_to_weighted, pcnn_shortest_path
from .errors import MeshcastError, ScenarioError
from .lca import lca_assign_channels, lca_build_tree
from .mcm import ascending_assignment, heuristic_assignment, mcm_build_tree
from .simulator import SimConfig, simulate_multicast
from .topology import bfs_levels, build_tree_mesh, generate_random_mesh

TREES = ("lca", "mcm")
ASSIGNERS = ("lca", "ascending", "heuristic")
SOLVERS = {"dspcnn": dspcnn_shortest_path, "pcnn": pcnn_shortest_path, "dijkstra": dijkstra_oracle}
STEPS = ("generate", "tree", "assign", "simulate")

METRIC_COLUMNS = ["scenario_id", "algorithm", "C", "delta", "throughput", "avg_delay",
                  "conflict_losses", "relay_count"]


def load_scenario(path) -> dict:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise ScenarioError("PARSE_ERROR", "scenario file not found", path) from None
    except json.JSONDecodeError as exc:
        raise ScenarioError("PARSE_ERROR", f"invalid JSON: {exc}", path) from None
    validate_scenario(doc, path)
    doc.setdefault("id", path.stem)
    doc["_base"] = str(path.parent)
    return doc


def _fail(msg, path):
    raise ScenarioError("VALIDATION_ERROR", msg, path)


def validate_scenario(doc, path=None):
    if not isinstance(doc, dict):
        _fail("scenario must be a JSON object", path)
    net = doc.get("network")
    if not isinstance(net, dict) or len(net) != 1 or next(iter(net)) not in (
            "fixture", "file", "inline", "generate"):
        _fail("network must have exactly one of fixture/file/inline/generate", path)
    if "generate" in net:
        gen = net["generate"]
        for key in ("n", "side", "range", "receivers", "seed"):
            if key not in gen:
                _fail(f"network.generate.{key} is required", path)
    if "fixture" in net:
        try:
            io.fixture_network(net["fixture"])
        except FileNotFoundError as exc:
            _fail(str(exc), path)

    tree = doc.get("tree", {})
    if tree.get("algorithm", "mcm") not in TREES:
        _fail(f"unknown tree algorithm {tree.get('algorithm')!r}; expected one of {TREES}", path)
    assign = doc.get("assign", {})
    if assign.get("algorithm", "heuristic") not in ASSIGNERS:
        _fail(f"unknown assign algorithm {assign.get('algorithm')!r}; expected one of {ASSIGNERS}", path)
    if int(assign.get("channels", 3)) < 1:
        _fail("assign.channels must be >= 1", path)
    delta = assign.get("delta", 0.5)
    if not 0 < delta <= 1:
        _fail("assign.delta must lie in (0, 1]", path)
    sim = doc.get("simulate", {})
    if int(sim.get("slots", 1000)) < 1 or not sim.get("rate", 1.0) > 0:
        _fail("simulate.slots must be >= 1 and simulate.rate > 0", path)
    sp = doc.get("sp")
    if sp is not None:
        for name in sp.get("solvers", list(SOLVERS)):
            if name not in SOLVERS:
                _fail(f"unknown solver {name!r}; expected one of {sorted(SOLVERS)}", path)
        if sp.get("mode", "hops") not in ("hops", "euclidean"):
            _fail("sp.mode must be hops or euclidean", path)
    sweep = doc.get("sweep")
    if sweep is not None:
        for name in sweep.get("trees", []):
            if name not in TREES:
                _fail(f"unknown tree algorithm {name!r} in sweep", path)
        for name in sweep.get("assigns", []):
            if name not in ASSIGNERS:
                _fail(f"unknown assign algorithm {name!r} in sweep", path)


def apply_seed_override(doc: dict, seed: int) -> dict:
    doc = copy.deepcopy(doc)
    if "generate" in doc["network"]:
        doc["network"]["generate"]["seed"] = seed
    doc.setdefault("tree", {})["seed"] = seed
    doc.setdefault("simulate", {})["seed"] = seed
    if "sweep" in doc:
        seeds = doc["sweep"].setdefault("seeds", {})
        if isinstance(seeds, dict):
            seeds["start"] = seed
    return doc


class _Step:
    """Re-raise module errors as ScenarioError tagged with the file and step."""

    def __init__(self, doc, name):
        self.path = doc.get("_path")
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, typ, exc, tb):
        if exc is None or isinstance(exc, ScenarioError):
            return False
        if isinstance(exc, MeshcastError):
            raise ScenarioError(exc.code, str(exc), self.path, self.name) from exc
        if isinstance(exc, (ValueError, KeyError, TypeError, FileNotFoundError)):
            raise ScenarioError("VALIDATION_ERROR", str(exc), self.path, self.name) from exc
        return False


def build_network(doc):
    net_doc = doc["network"]
    with _Step(doc, "generate"):
        if "fixture" in net_doc:
            return io.fixture_network(net_doc["fixture"])
        if "inline" in net_doc:
            return io.network_from_dict(net_doc["inline"])
        if "file" in net_doc:
            p = Path(doc.get("_base", ".")) / net_doc["file"]
            return io.network_from_dict(json.loads(p.read_text()))
        g = net_doc["generate"]
        return generate_random_mesh(int(g["n"]), float(g["side"]), float(g["range"]),
                                    int(g["receivers"]), int(g["seed"]))


def build_tree(doc, net, algorithm=None):
    cfg = doc.get("tree", {})
    algorithm = algorithm or cfg.get("algorithm", "mcm")
    with _Step(doc, "tree"):
        levels = bfs_levels(net)
        tm = build_tree_mesh(net, levels)
        if algorithm == "lca":
            return lca_build_tree(tm, net.receivers, int(cfg.get("seed", 0)), cfg.get("order"))
        return mcm_build_tree(tm, net.receivers)


def build_assignment(doc, net, tree, algorithm=None, channels=None):
    cfg = doc.get("assign", {})
    algorithm = algorithm or cfg.get("algorithm", "heuristic")
    C = int(channels if channels is not None else cfg.get("channels", 3))
    with _Step(doc, "assign"):
        if algorithm == "lca":
            return lca_assign_channels(tree, bfs_levels(net), C)
        if algorithm == "ascending":
            return ascending_assignment(tree, C)
        return heuristic_assignment(tree, net, C, float(cfg.get("delta", 0.5)),
                                    cfg.get("neighbor_radius"))


def run_simulation(doc, net, tree, assignment):
    sim = doc.get("simulate", {})
    cfg = SimConfig(int(sim.get("slots", 1000)), float(sim.get("rate", 1.0)),
                    int(sim.get("seed", 0)), float(doc.get("assign", {}).get("delta", 0.5)))
    with _Step(doc, "simulate"):
        return simulate_multicast(net, tree, assignment, cfg)


def _fmt(x) -> str:
    if isinstance(x, float):
        return "nan" if math.isnan(x) else repr(x)
    return str(x)


def metrics_row(scenario_id, tree_alg, assign_alg, C, delta, tree, metrics) -> list:
    return [scenario_id, f"{tree_alg}+{assign_alg}", C, delta, metrics.throughput,
            metrics.avg_delay, metrics.conflict_losses, len(tree.relay_set)]


def metrics_csv(rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(METRIC_COLUMNS)
    for row in rows:
        w.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def run_scenario(path, out_dir, until: str = "simulate", seed_override: int | None = None) -> dict:
    """Run the pipeline for one scenario file up to ``until`` and write its artifacts.

    Returns a mapping of artifact name to written path. Shortest-path runs
    happen whenever the scenario has an ``sp`` section.
    """
    if until not in STEPS + ("sp",):
        raise ValueError(f"unknown step {until!r}")
    doc = load_scenario(path)
    doc["_path"] = str(path)
    if seed_override is not None:
        doc = apply_seed_override(doc, seed_override)
    out = Path(out_dir)
    written = {}

    def emit(name, text):
        io.atomic_write(out / name, text)
        written[name] = out / name

    net = build_network(doc)
    emit("network.json", io.canonical_json(io.network_to_dict(net)))

    if until == "sp" or doc.get("sp") is not None:
        written.update(run_sp(doc, net, out))
    if until in ("generate", "sp"):
        return written

    tree = build_tree(doc, net)
    emit("tree.json", io.canonical_json(io.tree_to_dict(tree)))
    if until == "tree":
        return written

    assignment = build_assignment(doc, net, tree)
    emit("assignment.json", io.canonical_json(io.assignment_to_dict(assignment)))
    if until == "assign":
        return written

    metrics = run_simulation(doc, net, tree, assignment)
    a = doc.get("assign", {})
    row = metrics_row(doc["id"], doc.get("tree", {}).get("algorithm", "mcm"),
                      a.get("algorithm", "heuristic"), assignment.channel_count,
                      float(a.get("delta", 0.5)), tree, metrics)
    emit("metrics.csv", metrics_csv([row]))
    return written


def run_sp(doc, net, out: Path) -> dict:
    sp = doc.get("sp") or {}
    with _Step(doc, "sp"):
        goal = sp.get("goal")
        if goal is None:
            goal = max(net.receivers) if net.receivers else net.source
        graph = mesh_to_weighted(net, sp.get("mode", "hops"), goal=goal)
        written = {}
        io.atomic_write(out / "graph.txt", io.write_edge_list(graph))
        written["graph.txt"] = out / "graph.txt"
        for name in sp.get("solvers", list(SOLVERS)):
            res = SOLVERS[name](graph)
            fname = f"sp_{name}.txt"
            io.atomic_write(out / fname, io.format_path_result(res))
            written[fname] = out / fname
    return written


def _sweep_seed(args):
    doc, seed, trees, assigns, channels = args
    d = copy.deepcopy(doc)
    if "generate" in d["network"]:
        d["network"]["generate"]["seed"] = seed
    d.setdefault("tree", {})["seed"] = seed
    d.setdefault("simulate", {})["seed"] = seed
    delta = float(d.get("assign", {}).get("delta", 0.5))
    net = build_network(d)
    rows = []
    for t in trees:
        tree = build_tree(d, net, t)
        for a in assigns:
            for C in channels:
                assignment = build_assignment(d, net, tree, a, C)
                m = run_simulation(d, net, tree, assignment)
                rows.append(metrics_row(f"{d['id']}/seed={seed}", t, a, C, delta, tree, m))
    return rows


def sweep_seeds(doc) -> list:
    seeds = doc["sweep"].get("seeds", {"start": 0, "count": 10})
    if isinstance(seeds, dict):
        return list(range(int(seeds.get("start", 0)), int(seeds.get("start", 0)) + int(seeds["count"])))
    return [int(s) for s in seeds]


def run_sweep(path, out_dir, jobs: int = 1, seed_override: int | None = None) -> Path:
    """Run the scenario once per (seed, tree, assigner, C) and write one metrics CSV."""
    doc = load_scenario(path)
    doc["_path"] = str(path)
    if "sweep" not in doc:
        raise ScenarioError("VALIDATION_ERROR", "scenario has no sweep section", path, "sweep")
    if seed_override is not None:
        doc = apply_seed_override(doc, seed_override)
    sw = doc["sweep"]
    trees = sw.get("trees") or [doc.get("tree", {}).get("algorithm", "mcm")]
    assigns = sw.get("assigns") or [doc.get("assign", {}).get("algorithm", "heuristic")]
    channels = sw.get("channels") or [int(doc.get("assign", {}).get("channels", 3))]
    tasks = [(doc, s, trees, assigns, channels) for s in sweep_seeds(doc)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_sweep_seed, tasks))
    else:
        chunks = [_sweep_seed(t) for t in tasks]
    target = Path(out_dir) / "metrics.csv"
    io.atomic_write(target, metrics_csv([row for chunk in chunks for row in chunk]))
    return target


COMPARED = {"throughput": +1, "avg_delay": -1, "conflict_losses": -1, "relay_count": -1}


def _read_metrics(path):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except FileNotFoundError:
        raise ScenarioError("PARSE_ERROR", "metrics file not found", path, "compare") from None
    if not rows:
        raise ScenarioError("EMPTY_INPUT", "metrics file is empty", path, "compare")
    header, body = rows[0], rows[1:]
    if not body:
        raise ScenarioError("EMPTY_INPUT", "metrics file has a header but no rows", path, "compare")
    return header, body


def compare(path_a, path_b) -> list[dict]:
    """Per-metric means, ratios (b/a) and paired win counts of two metrics CSVs.

    Rows are paired by position. Higher throughput wins; lower delay,
    conflict losses and relay count win.
    """
    ha, ra = _read_metrics(path_a)
    hb, rb = _read_metrics(path_b)
    if ha != hb:
        raise ScenarioError("SCHEMA_MISMATCH", f"column headers differ: {ha} vs {hb}", path_b, "compare")
    if len(ra) != len(rb):
        raise ScenarioError("SCHEMA_MISMATCH", f"row counts differ: {len(ra)} vs {len(rb)}",
                            path_b, "compare")
    summary = []
    for metric, sense in COMPARED.items():
        if metric not in ha:
            continue
        k = ha.index(metric)
        pairs = [(float(x[k]), float(y[k])) for x, y in zip(ra, rb)]
        pairs = [(x, y) for x, y in pairs if not (math.isnan(x) or math.isnan(y))]
        mean_a = sum(x for x, _ in pairs) / len(pairs) if pairs else math.nan
        mean_b = sum(y for _, y in pairs) / len(pairs) if pairs else math.nan
        if mean_a == mean_b:
            ratio = 1.0
        elif mean_a == 0:
            ratio = math.inf
        else:
            ratio = mean_b / mean_a
        b_wins = sum(1 for x, y in pairs if sense * (y - x) > 0)
        a_wins = sum(1 for x, y in pairs if sense * (x - y) > 0)
        summary.append({"metric": metric, "mean_a": mean_a, "mean_b": mean_b, "ratio": ratio,
                        "b_wins": b_wins, "a_wins": a_wins, "ties": len(pairs) - a_wins - b_wins,
                        "b_win_rate": b_wins / len(pairs) if pairs else math.nan})
    return summary


def summary_csv(summary) -> str:
    buf = _io.StringIO()
    cols = ["metric", "mean_a", "mean_b", "ratio", "b_wins", "a_wins", "ties", "b_win_rate"]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for s in summary:
        w.writerow([_fmt(s[c]) for c in cols])
    return buf.getvalue()


def summary_table(summary) -> str:
    head = f"{'metric':<16}{'mean_a':>12}{'mean_b':>12}{'ratio':>9}{'b_win%':>9}"
    lines = [head, "-" * len(head)]
    for s in summary:
        lines.append(f"{s['metric']:<16}{s['mean_a']:>12.4f}{s['mean_b']:>12.4f}"
                     f"{s['ratio']:>9.4f}{100 * s['b_win_rate']:>8.1f}%")
    return "\n".join(lines) + "\n"
