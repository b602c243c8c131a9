"""Command-line front end.

Each subcommand takes either ``--scenario`` (run the pipeline up to that step)
or serialized intermediates, so every stage can be driven on its own::

    meshcast generate --scenario s.json --out run/
    meshcast tree     --network run/network.json --algorithm mcm --out run/
    meshcast assign   --network run/network.json --tree run/tree.json \\
                      --algorithm heuristic --channels 3 --out run/
    meshcast simulate --network run/network.json --tree run/tree.json \\
                      --assignment run/assignment.json --out run/
    meshcast sp       --graph graph.txt --solver dspcnn
    meshcast sweep    --scenario sweep.json --out run/ --jobs 4
    meshcast compare  a/metrics.csv b/metrics.csv [--csv summary.csv]
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness, io
from .errors import MeshcastError, ScenarioError


def _read_json(path, step):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ScenarioError("PARSE_ERROR", "file not found", path, step) from None
    except json.JSONDecodeError as exc:
        raise ScenarioError("PARSE_ERROR", f"invalid JSON: {exc}", path, step) from None


def _standalone_doc(args) -> dict:
    doc = {"id": "cli", "network": {"inline": _read_json(args.network, "generate")}}
    if getattr(args, "algorithm", None) and args.command == "tree":
        doc["tree"] = {"algorithm": args.algorithm, "seed": args.seed}
    if args.command == "assign":
        doc["assign"] = {"algorithm": args.algorithm, "channels": args.channels, "delta": args.delta}
        if args.neighbor_radius is not None:
            doc["assign"]["neighbor_radius"] = args.neighbor_radius
    if args.command == "simulate":
        doc["assign"] = {"delta": args.delta}
        doc["simulate"] = {"slots": args.slots, "rate": args.rate, "seed": args.seed}
    harness.validate_scenario(doc, args.network)
    return doc


def cmd_pipeline(args):
    if args.scenario:
        written = harness.run_scenario(args.scenario, args.out, args.command, args.seed_override)
        for name in sorted(written):
            print(written[name])
        return

    if not args.network:
        raise ScenarioError("VALIDATION_ERROR", "give --scenario or --network")
    doc = _standalone_doc(args)
    out = Path(args.out)
    net = harness.build_network(doc)
    if args.command == "generate":
        raise ScenarioError("VALIDATION_ERROR", "generate needs --scenario")
    if args.command == "tree":
        tree = harness.build_tree(doc, net)
        io.atomic_write(out / "tree.json", io.canonical_json(io.tree_to_dict(tree)))
        print(out / "tree.json")
        return
    if not args.tree:
        raise ScenarioError("VALIDATION_ERROR", f"{args.command} needs --tree")
    tree = io.tree_from_dict(_read_json(args.tree, "tree"))
    if args.command == "assign":
        a = harness.build_assignment(doc, net, tree)
        io.atomic_write(out / "assignment.json", io.canonical_json(io.assignment_to_dict(a)))
        print(out / "assignment.json")
        return
    if not args.assignment:
        raise ScenarioError("VALIDATION_ERROR", "simulate needs --assignment")
    a = io.assignment_from_dict(_read_json(args.assignment, "assign"))
    m = harness.run_simulation(doc, net, tree, a)
    row = harness.metrics_row("cli", "file", "file", a.channel_count, args.delta, tree, m)
    io.atomic_write(out / "metrics.csv", harness.metrics_csv([row]))
    print(out / "metrics.csv")


def cmd_sp(args):
    if args.scenario:
        out = args.out or "."
        written = harness.run_scenario(args.scenario, out, "sp", args.seed_override)
        for name in sorted(written):
            print(written[name])
        return
    if not args.graph:
        raise ScenarioError("VALIDATION_ERROR", "give --scenario or --graph")
    try:
        graph = io.read_edge_list(Path(args.graph).read_text())
    except FileNotFoundError:
        raise ScenarioError("PARSE_ERROR", "file not found", args.graph, "sp") from None
    except ValueError as exc:
        raise ScenarioError("PARSE_ERROR", str(exc), args.graph, "sp") from None
    record = io.format_path_result(harness.SOLVERS[args.solver](graph))
    if args.out:
        io.atomic_write(Path(args.out) / f"sp_{args.solver}.txt", record)
    sys.stdout.write(record)


def cmd_sweep(args):
    print(harness.run_sweep(args.scenario, args.out, args.jobs, args.seed_override))


def cmd_compare(args):
    summary = harness.compare(args.a, args.b)
    sys.stdout.write(harness.summary_table(summary))
    if args.csv:
        io.atomic_write(args.csv, harness.summary_csv(summary))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="meshcast", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--scenario", help="scenario JSON file")
        p.add_argument("--out", required=out_required, help="output directory")
        p.add_argument("--seed-override", type=int, help="replace every seed in the scenario")

    p = sub.add_parser("generate", help="build the network of a scenario")
    common(p)
    p.set_defaults(func=cmd_pipeline, network=None)

    p = sub.add_parser("tree", help="build a multicast tree")
    common(p)
    p.add_argument("--network")
    p.add_argument("--algorithm", choices=harness.TREES, default="mcm")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("assign", help="assign channels to a tree")
    common(p)
    p.add_argument("--network")
    p.add_argument("--tree")
    p.add_argument("--algorithm", choices=harness.ASSIGNERS, default="heuristic")
    p.add_argument("--channels", type=int, default=3)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--neighbor-radius", type=float)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("simulate", help="simulate multicast delivery")
    common(p)
    p.add_argument("--network")
    p.add_argument("--tree")
    p.add_argument("--assignment")
    p.add_argument("--slots", type=int, default=1000)
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=0.5)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("sp", help="shortest path between two vertices")
    common(p, out_required=False)
    p.add_argument("--graph", help="edge-list file: 'n m s g' then 'u v length' lines")
    p.add_argument("--solver", choices=sorted(harness.SOLVERS), default="dspcnn")
    p.set_defaults(func=cmd_sp)

    p = sub.add_parser("sweep", help="run a seed/channel sweep into one metrics CSV")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed-override", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="compare two metrics CSVs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--csv", help="also write the summary here")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except MeshcastError as exc:
        print(f"meshcast: error: {exc}", file=sys.stderr)
        return 2 if exc.code in ("PARSE_ERROR", "VALIDATION_ERROR", "SCHEMA_MISMATCH",
                                 "EMPTY_INPUT") else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
