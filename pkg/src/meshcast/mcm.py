"""Multi-Channel Multicast: bottom-up relay selection and the two MCM channel assigners."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import UncoverableError
from .interference import InterferenceParams, pairwise_objective
from .multicast import ChannelAssignment, MulticastTree
from .topology import MeshNetwork, TreeMesh, check_receivers


@dataclass(frozen=True)
class CoverInstance:
    """Targets at level i+1 and, per level-i candidate, the targets it can reach."""

    targets: frozenset
    coverage: Mapping[object, frozenset]

    @classmethod
    def from_tree_mesh(cls, tm: TreeMesh, level: int, targets) -> "CoverInstance":
        targets = frozenset(targets)
        coverage = {u: frozenset(tm.children[u]) & targets for u in tm.levels.nodes_at(level)}
        return cls(targets, coverage)


def min_relay_cover(inst: CoverInstance) -> set:
    """Greedy set cover: take the candidate reaching most uncovered targets, ties to smallest id."""
    reachable = frozenset().union(*inst.coverage.values()) if inst.coverage else frozenset()
    missing = inst.targets - reachable
    if missing:
        raise UncoverableError(f"no candidate covers {sorted(missing)}")

    uncovered = set(inst.targets)
    chosen = set()
    candidates = sorted(inst.coverage)
    while uncovered:
        best = max(candidates, key=lambda c: (len(inst.coverage[c] & uncovered), _neg(c)))
        chosen.add(best)
        uncovered -= inst.coverage[best]
    return chosen


class _neg:
    """Inverts ordering so ``max`` prefers the smallest id on ties (works for str ids too)."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return other.v < self.v

    def __eq__(self, other):
        return self.v == other.v


def mcm_build_tree(tm: TreeMesh, receivers) -> MulticastTree:
    """Select relays level by level from the deepest receiver up to the source.

    At each level ``i`` the targets are the receivers and already chosen relays
    on level ``i+1``; a greedy cover over level-``i`` nodes picks the relays.
    Each target hangs off the smallest-id chosen relay that reaches it, so every
    receiver ends up at tree depth equal to its BFS level.
    """
    receivers = check_receivers(tm.levels, receivers)
    if not receivers:
        return MulticastTree(tm.source, receivers, {})
    level = tm.levels.level
    top = max(level[r] for r in receivers)

    parent_of = {}
    pending = {r for r in receivers if level[r] == top}
    for i in range(top - 1, -1, -1):
        inst = CoverInstance.from_tree_mesh(tm, i, pending)
        chosen = min_relay_cover(inst)
        for t in pending:
            parent_of[t] = min(c for c in chosen if t in inst.coverage[c])
        pending = chosen | {r for r in receivers if level[r] == i}
    pending.discard(tm.source)
    assert not pending, pending
    return MulticastTree(tm.source, receivers, parent_of)


def ascending_assignment(tree: MulticastTree, C: int) -> ChannelAssignment:
    """Top-down: the source sends on 0, each forwarder sends one channel above its RI, wrapping at C.

    Leaves get no SI.
    """
    if C < 1:
        raise ValueError("C must be >= 1")
    ri, si = {}, {}
    for u in tree.bfs_order():
        if u != tree.source:
            ri[u] = si[tree.parent_of[u]]
        if tree.children.get(u):
            si[u] = 0 if u == tree.source else (ri[u] + 1) % C
    return ChannelAssignment(ri, si, C)


def heuristic_assignment(tree: MulticastTree, net: MeshNetwork, C: int, delta: float = 0.5,
                         neighbor_radius: float | None = None, trace: list | None = None
                         ) -> ChannelAssignment:
    """Greedy interference-minimizing SI choice for each forwarding node.

    Forwarders are visited top-down (ties by id). A forwarder's RI is its
    parent's SI; its SI is the channel minimizing ``sum IR^2`` against the
    already-assigned forwarders within ``neighbor_radius`` (default ``2R``),
    smallest channel on ties. With no such neighbour it falls back to
    ``(ri + 1) mod C``; the source falls back to channel 0.

    If ``trace`` is a list, one ``(node, neighbours, objective_per_channel)``
    record per forwarder is appended to it.
    """
    if C < 1:
        raise ValueError("C must be >= 1")
    params = InterferenceParams(net.comm_range, delta)
    radius = 2 * net.comm_range if neighbor_radius is None else neighbor_radius

    ri, si = {}, {}
    done = []
    for u in tree.bfs_order():
        if u != tree.source:
            ri[u] = si[tree.parent_of[u]]
        if not tree.children.get(u):
            continue
        nbrs = [v for v in done if net.distance(u, v) <= radius]
        if nbrs:
            costs = [pairwise_objective(u, {**si, u: c}, nbrs, params) for c in range(C)]
            si[u] = min(range(C), key=costs.__getitem__)
        else:
            costs = []
            si[u] = (ri.get(u, -1) + 1) % C
        if trace is not None:
            trace.append((u, tuple(nbrs), tuple(costs)))
        done.append(u)
    return ChannelAssignment(ri, si, C)
