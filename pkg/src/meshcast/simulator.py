"""Slotted multicast delivery over a channel-assigned tree.

Each slot the source injects packets, then every forwarding node with a
non-empty queue tries to send its head packet on its SI. Attempting senders
that conflict (see :func:`~meshcast.interference.links_conflict`) are thinned
by a seeded random backoff: senders are admitted in a random order and a
sender defers if it conflicts with anyone already admitted. A successful
transmission reaches every child at once. Deferred packets stay queued.

A packet emitted in slot ``t`` and delivered at the end of slot ``t'`` has a
delay of ``t' - t + 1`` slots, so a one-hop delivery counts as 1.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .interference import InterferenceParams, links_conflict
from .multicast import ChannelAssignment, MulticastTree, check_link_contract
from .topology import MeshNetwork


@dataclass(frozen=True)
class SimConfig:
    slots: int = 1000
    packets_per_slot_at_source: float = 1.0
    seed: int = 0
    delta: float = 0.5

    def __post_init__(self):
        if self.slots < 1:
            raise ValueError("slots must be >= 1")
        if not self.packets_per_slot_at_source > 0:
            raise ValueError("packets_per_slot_at_source must be positive")


@dataclass(frozen=True)
class SimMetrics:
    delivered: Mapping[object, int]
    throughput: float
    avg_delay: float
    conflict_losses: int
    injected: int = field(default=0)


def conflict_table(senders, assignment: ChannelAssignment, net: MeshNetwork,
                   params: InterferenceParams) -> dict:
    table = {u: set() for u in senders}
    for i, u in enumerate(senders):
        for v in senders[i + 1:]:
            if links_conflict(u, v, assignment, net.positions, params):
                table[u].add(v)
                table[v].add(u)
    return table


def simulate_multicast(net: MeshNetwork, tree: MulticastTree, assignment: ChannelAssignment,
                       cfg: SimConfig) -> SimMetrics:
    check_link_contract(tree, assignment)
    params = InterferenceParams(net.comm_range, cfg.delta)
    senders = tree.forwarding_nodes
    conflicts = conflict_table(senders, assignment, net, params)
    rng = np.random.default_rng(cfg.seed)

    queues = {u: deque() for u in senders}
    delivered = {r: 0 for r in sorted(tree.receivers)}
    delay_sum = 0
    losses = 0
    injected = 0
    credit = 0.0

    for t in range(cfg.slots):
        credit += cfg.packets_per_slot_at_source
        burst = int(math.floor(credit + 1e-12))
        credit -= burst
        injected += burst
        if senders:
            queues[tree.source].extend([t] * burst)

        active = [u for u in senders if queues[u]]
        if len(active) > 1 and any(conflicts[u].intersection(active) for u in active):
            admitted = []
            for k in rng.permutation(len(active)):
                u = active[k]
                if conflicts[u].isdisjoint(admitted):
                    admitted.append(u)
                else:
                    losses += 1
            active = admitted

        sent = [(u, queues[u].popleft()) for u in active]
        for u, born in sent:
            for c in tree.children[u]:
                if c in delivered:
                    delivered[c] += 1
                    delay_sum += t - born + 1
                if c in queues:
                    queues[c].append(born)

    total = sum(delivered.values())
    throughput = min(delivered.values()) / cfg.slots if delivered else 0.0
    avg_delay = delay_sum / total if total else math.nan
    return SimMetrics(delivered, throughput, avg_delay, losses, injected)
