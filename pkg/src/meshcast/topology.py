"""Mesh network model, random instance generation, BFS leveling and the tree mesh.

A :class:`MeshNetwork` is a unit-disk graph over 2-D node positions unless an
explicit edge list is supplied (hand-built fixtures). Node ids may be ints or
strings but must be mutually sortable; every ordering decision in the package
uses ascending id.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

import numpy as np

from .errors import UnreachableReceiverError, UnsatisfiableError

Node = Hashable

MAX_RESAMPLES = 100


def _edge(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class MeshNetwork:
    positions: Mapping[Node, tuple[float, float]]
    comm_range: float
    source: Node
    receivers: frozenset
    adjacency: Mapping[Node, tuple] = field(repr=False)
    explicit_edges: bool = False

    @classmethod
    def build(cls, positions, comm_range, source, receivers=(), edges=None):
        """Validate inputs and derive adjacency.

        When ``edges`` is None the unit-disk rule applies: ``u ~ v`` iff their
        Euclidean distance is at most ``comm_range``. Otherwise the given edges
        are used verbatim and geometry is only kept for interference.
        """
        positions = {u: (float(x), float(y)) for u, (x, y) in positions.items()}
        if not positions:
            raise ValueError("network needs at least one node")
        if not comm_range > 0:
            raise ValueError(f"comm_range must be positive, got {comm_range}")
        if source not in positions:
            raise ValueError(f"source {source!r} is not a node")
        receivers = frozenset(receivers)
        unknown = receivers - positions.keys()
        if unknown:
            raise ValueError(f"unknown receivers: {sorted(unknown)}")
        if source in receivers:
            raise ValueError("source cannot be a receiver")

        ids = sorted(positions)
        nbrs = {u: set() for u in ids}
        if edges is None:
            xy = np.array([positions[u] for u in ids])
            d2 = ((xy[:, None, :] - xy[None, :, :]) ** 2).sum(axis=-1)
            within = d2 <= comm_range * comm_range
            np.fill_diagonal(within, False)
            for i, j in zip(*np.nonzero(np.triu(within))):
                nbrs[ids[i]].add(ids[j])
                nbrs[ids[j]].add(ids[i])
        else:
            for u, v in edges:
                if u == v:
                    raise ValueError(f"self-loop on {u!r}")
                if u not in nbrs or v not in nbrs:
                    raise ValueError(f"edge ({u!r}, {v!r}) references an unknown node")
                nbrs[u].add(v)
                nbrs[v].add(u)
        adjacency = {u: tuple(sorted(nbrs[u])) for u in ids}
        return cls(positions, float(comm_range), source, receivers, adjacency,
                   explicit_edges=edges is not None)

    @property
    def node_count(self) -> int:
        return len(self.positions)

    @property
    def nodes(self) -> list:
        return sorted(self.positions)

    def neighbors(self, u) -> tuple:
        return self.adjacency[u]

    def has_edge(self, u, v) -> bool:
        return v in self.adjacency.get(u, ())

    @property
    def edges(self) -> frozenset:
        return frozenset(_edge(u, v) for u, vs in self.adjacency.items() for v in vs)

    def distance(self, u, v) -> float:
        (x1, y1), (x2, y2) = self.positions[u], self.positions[v]
        return math.hypot(x1 - x2, y1 - y2)


@dataclass(frozen=True)
class LevelDecomposition:
    """BFS hop levels from the source and, for each node, its sorted parent list."""

    source: Node
    level: Mapping[Node, int]
    parents: Mapping[Node, tuple]

    @property
    def depth(self) -> int:
        return max(self.level.values())

    def nodes_at(self, i: int) -> list:
        return sorted(u for u, lv in self.level.items() if lv == i)


@dataclass(frozen=True)
class TreeMesh:
    """Leveled DAG: only edges joining consecutive BFS levels survive."""

    levels: LevelDecomposition
    nodes: tuple
    edges: frozenset
    children: Mapping[Node, tuple] = field(repr=False)
    positions: Mapping[Node, tuple[float, float]] = field(repr=False, default=None)

    @property
    def source(self):
        return self.levels.source

    def parents(self, v) -> tuple:
        return self.levels.parents.get(v, ())


def generate_random_mesh(n: int, side: float, R: float, k_receivers: int, seed: int,
                         max_attempts: int = MAX_RESAMPLES) -> MeshNetwork:
    """Uniform random unit-disk mesh in a ``side x side`` square.

    Node 0 is the source and ``k_receivers`` receivers are drawn without
    replacement from the other nodes. Positions are resampled until every
    receiver is connected to the source; after ``max_attempts`` failures
    :class:`UnsatisfiableError` is raised.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not side > 0 or not R > 0:
        raise ValueError("side and R must be positive")
    if not 1 <= k_receivers <= n - 1:
        raise ValueError("k_receivers must lie in [1, n-1]")

    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        xy = rng.uniform(0.0, side, size=(n, 2))
        receivers = rng.choice(np.arange(1, n), size=k_receivers, replace=False)
        net = MeshNetwork.build(
            {i: (xy[i, 0], xy[i, 1]) for i in range(n)},
            R, 0, (int(r) for r in receivers),
        )
        if reachable_from(net, net.source) >= net.receivers:
            return net
    raise UnsatisfiableError(
        f"no connected instance after {max_attempts} attempts "
        f"(n={n}, side={side}, R={R}); node density too low")


def reachable_from(net: MeshNetwork, start) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in net.neighbors(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def bfs_levels(net: MeshNetwork) -> LevelDecomposition:
    level = {net.source: 0}
    queue = deque([net.source])
    while queue:
        u = queue.popleft()
        for v in net.neighbors(u):
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)

    missing = net.receivers - level.keys()
    if missing:
        raise UnreachableReceiverError(f"receivers unreachable from source: {sorted(missing)}")

    parents = {
        v: tuple(u for u in net.neighbors(v) if level.get(u) == lv - 1)
        for v, lv in level.items()
    }
    return LevelDecomposition(net.source, level, parents)


def build_tree_mesh(net: MeshNetwork, levels: LevelDecomposition) -> TreeMesh:
    """Drop every edge whose endpoints share a level.

    Nodes unreachable from the source have no level, so their edges are
    dropped too; the node set is kept whole.
    """
    if levels.source != net.source:
        raise ValueError("level decomposition was computed for a different source")
    lv = levels.level
    kept = frozenset(
        (u, v) for u, v in net.edges
        if u in lv and v in lv and abs(lv[u] - lv[v]) == 1
    )
    children = {u: [] for u in net.nodes}
    for u, v in kept:
        lo, hi = (u, v) if lv[u] < lv[v] else (v, u)
        children[lo].append(hi)
    children = {u: tuple(sorted(cs)) for u, cs in children.items()}
    return TreeMesh(levels, tuple(net.nodes), kept, children, net.positions)


def check_receivers(levels: LevelDecomposition, receivers: Iterable) -> frozenset:
    receivers = frozenset(receivers)
    missing = receivers - levels.level.keys()
    if missing:
        raise UnreachableReceiverError(f"receivers unreachable from source: {sorted(missing)}")
    return receivers
