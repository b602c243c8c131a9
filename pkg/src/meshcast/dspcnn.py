"""Point-to-point shortest paths with pulse-coupled autowaves.

Every vertex is a neuron and every edge a link whose length is the delay a
pulse needs to cross it. A neuron fires the first time a pulse reaches it and
remembers the neighbour that fired it (its precursor). Time is continuous and
event driven, so a neuron's firing time equals its distance from the wave's
origin.

``pcnn_shortest_path`` launches one wave from the source and stops when the
goal fires. ``dspcnn_shortest_path`` launches a P_s wave from the source and a
P_g wave from the goal at t=0 and stops once the two fronts have met, either
at a neuron fired by both or inside an edge whose endpoints were fired by
opposite waves. ``dijkstra_oracle`` is the classical reference.
"""
from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass, field

from .errors import NoPathError


class WaveTag(enum.IntEnum):
    P_s = 0
    P_g = 1

    @property
    def other(self) -> "WaveTag":
        return WaveTag(1 - self)


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple
    source: int
    goal: int
    labels: tuple | None = None
    adjacency: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = tuple((int(u), int(v), float(w)) for u, v, w in self.edges)
        adj = [[] for _ in range(self.n)]
        for u, v, w in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            if w < 0 or math.isnan(w):
                raise ValueError(f"edge ({u}, {v}) has invalid length {w}")
            adj[u].append((v, w))
            adj[v].append((u, w))
        for s in (self.source, self.goal):
            if not 0 <= s < self.n:
                raise ValueError(f"vertex {s} outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def with_endpoints(self, source: int, goal: int) -> "WeightedGraph":
        return WeightedGraph(self.n, self.edges, source, goal, self.labels)

    def edge_length(self, u: int, v: int) -> float:
        return min(w for x, w in self.adjacency[u] if x == v)


@dataclass(frozen=True)
class PathResult:
    path: tuple
    length: float
    fired_count: int
    solver: str


@dataclass
class WaveState:
    fire_time: dict = field(default_factory=dict)
    precursor: dict = field(default_factory=dict)
    meeting: tuple | None = None
    fired_count: int = 0

    def fire(self, v, tag, t, pre):
        self.fire_time[v, tag] = t
        self.precursor[v, tag] = pre
        self.fired_count += 1

    def fired(self, v, tag) -> bool:
        return (v, tag) in self.fire_time

    def backtrack(self, v, tag) -> list:
        chain = [v]
        while (pre := self.precursor[chain[-1], tag]) is not None:
            chain.append(pre)
        return chain


def dijkstra_oracle(graph: WeightedGraph) -> PathResult:
    s, g = graph.source, graph.goal
    dist = [math.inf] * graph.n
    pred = [None] * graph.n
    settled = [False] * graph.n
    dist[s] = 0.0
    heap = [(0.0, s)]
    count = 0
    while heap:
        d, u = heapq.heappop(heap)
        if settled[u]:
            continue
        settled[u] = True
        count += 1
        if u == g:
            break
        for v, w in graph.adjacency[u]:
            if settled[v]:
                continue
            nd = d + w
            if nd < dist[v] or (nd == dist[v] and u < pred[v]):
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
    if not settled[g]:
        raise NoPathError(f"goal {g} unreachable from source {s}")
    path = [g]
    while path[-1] != s:
        path.append(pred[path[-1]])
    return PathResult(tuple(reversed(path)), dist[g], count, "dijkstra")


def pcnn_shortest_path(graph: WeightedGraph, state: WaveState | None = None) -> PathResult:
    """Single autowave from the source; stops when the goal neuron fires."""
    state = WaveState() if state is None else state
    s, g = graph.source, graph.goal
    events = [(0.0, s, -1)]
    while events:
        t, v, pre = heapq.heappop(events)
        if state.fired(v, WaveTag.P_s):
            continue
        state.fire(v, WaveTag.P_s, t, None if pre < 0 else pre)
        if v == g:
            path = state.backtrack(g, WaveTag.P_s)[::-1]
            return PathResult(tuple(path), t, state.fired_count, "pcnn")
        for u, w in graph.adjacency[v]:
            if not state.fired(u, WaveTag.P_s):
                heapq.heappush(events, (t + w, u, v))
    raise NoPathError(f"goal {g} unreachable from source {s}")


def dspcnn_shortest_path(graph: WeightedGraph, state: WaveState | None = None) -> PathResult:
    """Dual-source autowaves meeting in the middle.

    The first meeting fixes ``t_meet``: the time a neuron is fired by its
    second wave, or, for fronts crossing inside edge (u, w), the instant
    ``(t_u + l + t_w) / 2`` at which they collide. Events stamped at or before
    the earliest meeting time are still drained, and the junction (neuron or
    edge) minimising ``t_s + t_g (+ l)`` is kept. Stopping at the very first
    contact can return a longer path, so the drain is required for exactness.

    Pass a fresh :class:`WaveState` as ``state`` to inspect firings afterwards.
    """
    state = WaveState() if state is None else state
    s, g = graph.source, graph.goal
    events = [(0.0, WaveTag.P_s, s, -1), (0.0, WaveTag.P_g, g, -1)]
    best = math.inf
    junction = None
    t_meet = math.inf

    while events and events[0][0] <= t_meet:
        t, tag, v, pre = heapq.heappop(events)
        if state.fired(v, tag):
            continue
        state.fire(v, tag, t, None if pre < 0 else pre)
        other = tag.other

        if state.fired(v, other):
            total = t + state.fire_time[v, other]
            t_meet = min(t_meet, t)
            # on equal totals a neuron fired by both waves is the preferred junction
            if total < best or (total == best and junction[0] == "edge"):
                best, junction = total, ("vertex", v)

        for u, w in graph.adjacency[v]:
            if state.fired(u, other):
                total = t + w + state.fire_time[u, other]
                t_meet = min(t_meet, total / 2)
                if total < best:
                    edge = (v, u) if tag is WaveTag.P_s else (u, v)
                    best, junction = total, ("edge", edge)
            if not state.fired(u, tag):
                heapq.heappush(events, (t + w, tag, u, v))

    if junction is None:
        raise NoPathError(f"goal {g} unreachable from source {s}")
    state.meeting = junction
    kind, where = junction
    if kind == "vertex":
        head = state.backtrack(where, WaveTag.P_s)[::-1]
        tail = state.backtrack(where, WaveTag.P_g)[1:]
    else:
        a, b = where
        head = state.backtrack(a, WaveTag.P_s)[::-1]
        tail = state.backtrack(b, WaveTag.P_g)
    return PathResult(tuple(head + tail), best, state.fired_count, "dspcnn")


def mesh_to_weighted(net, mode: str = "hops", goal=None, source=None) -> WeightedGraph:
    """Map a mesh network to a weighted graph, one neuron per node.

    Vertices are numbered by ascending node id; ``labels[i]`` is the original
    id of vertex ``i``. ``mode`` is ``"hops"`` (unit lengths) or ``"euclidean"``.
    """
    if mode not in ("hops", "euclidean"):
        raise ValueError(f"unknown mode {mode!r}")
    labels = tuple(net.nodes)
    index = {u: i for i, u in enumerate(labels)}
    edges = tuple(
        (index[u], index[v], 1.0 if mode == "hops" else net.distance(u, v))
        for u, v in sorted(net.edges)
    )
    source = net.source if source is None else source
    goal = source if goal is None else goal
    return WeightedGraph(len(labels), edges, index[source], index[goal], labels)
