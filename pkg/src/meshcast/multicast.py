"""Multicast tree and channel assignment containers shared by LCA and MCM."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import ContractViolationError


@dataclass(frozen=True)
class MulticastTree:
    """Tree rooted at ``source``; ``parent_of`` maps each non-source tree node to its parent."""

    source: object
    receivers: frozenset
    parent_of: Mapping[object, object]
    children: Mapping[object, tuple] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kids = {u: [] for u in self.tree_nodes}
        for c, p in self.parent_of.items():
            kids.setdefault(p, []).append(c)
        object.__setattr__(self, "children", {u: tuple(sorted(cs)) for u, cs in kids.items()})
        self.validate()

    @property
    def tree_nodes(self) -> frozenset:
        return frozenset(self.parent_of) | {self.source}

    @property
    def edges(self) -> frozenset:
        """Tree edges as (child, parent) pairs."""
        return frozenset(self.parent_of.items())

    @property
    def forwarding_nodes(self) -> list:
        """Tree nodes with at least one child (the source included)."""
        return [u for u in self.bfs_order() if self.children.get(u)]

    @property
    def relay_set(self) -> frozenset:
        """Tree nodes other than the source and receivers that forward nothing."""
        leaves = {r for r in self.receivers if not self.children.get(r)}
        return self.tree_nodes - {self.source} - leaves

    def depth(self, v) -> int:
        d = 0
        while v != self.source:
            v = self.parent_of[v]
            d += 1
        return d

    def bfs_order(self) -> list:
        """Top-down order: by depth, ties by ascending node id."""
        order, frontier = [], [self.source]
        while frontier:
            order.extend(frontier)
            frontier = sorted(c for u in frontier for c in self.children.get(u, ()))
        return order

    def validate(self):
        if self.source in self.parent_of:
            raise ValueError("source must not have a parent")
        missing = self.receivers - self.tree_nodes
        if missing:
            raise ValueError(f"receivers missing from tree: {sorted(missing)}")
        reached = {self.source}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for c in self.children.get(u, ()):
                reached.add(c)
                queue.append(c)
        if reached != self.tree_nodes:
            stray = sorted(self.tree_nodes - reached)
            raise ValueError(f"nodes not connected to source (cycle or dangling parent): {stray}")


@dataclass(frozen=True)
class ChannelAssignment:
    """Receive-interface (``ri``) and send-interface (``si``) channel per tree node.

    Nodes absent from a mapping have no interface of that kind: the source has
    no RI, and under some assigners leaves have no SI.
    """

    ri: Mapping[object, int]
    si: Mapping[object, int]
    channel_count: int

    def __post_init__(self):
        if self.channel_count < 1:
            raise ValueError("channel_count must be >= 1")
        for name, table in (("ri", self.ri), ("si", self.si)):
            for u, c in table.items():
                if not 0 <= c < self.channel_count:
                    raise ValueError(f"{name}({u!r})={c} outside [0, {self.channel_count - 1}]")

    def ri_of(self, u) -> Optional[int]:
        return self.ri.get(u)

    def si_of(self, u) -> Optional[int]:
        return self.si.get(u)


def check_link_contract(tree: MulticastTree, assignment: ChannelAssignment):
    """Raise :class:`ContractViolationError` unless ri(child) == si(parent) on every tree edge."""
    bad = []
    for c, p in sorted(tree.parent_of.items()):
        if p not in assignment.si or assignment.ri.get(c) != assignment.si[p]:
            bad.append((c, p, assignment.ri.get(c), assignment.si.get(p)))
    if bad:
        detail = ", ".join(f"{c}<-{p}: ri={r} si={s}" for c, p, r, s in bad[:5])
        raise ContractViolationError(f"{len(bad)} tree edge(s) break ri(child)=si(parent): {detail}")
