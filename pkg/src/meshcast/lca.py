"""Level Channel Assignment: upward parent chaining plus one channel per BFS level."""
from __future__ import annotations

import numpy as np

from .multicast import ChannelAssignment, MulticastTree
from .topology import LevelDecomposition, TreeMesh, check_receivers


def lca_build_tree(tm: TreeMesh, receivers, seed: int, order=None) -> MulticastTree:
    """Connect every receiver to the tree by walking up the BFS levels.

    The source and all receivers start out as tree nodes. Receivers are taken
    in ascending id order unless ``order`` gives an explicit sequence. From a
    receiver, if any parent is already a tree node the walk attaches to the
    smallest-id such parent and stops; otherwise a parent is drawn uniformly
    (seeded), becomes a relay, and the walk continues from it.
    """
    receivers = check_receivers(tm.levels, receivers)
    if order is None:
        order = sorted(receivers)
    else:
        order = list(order)
        if set(order) != receivers or len(order) != len(receivers):
            raise ValueError("order must be a permutation of the receivers")

    rng = np.random.default_rng(seed)
    in_tree = set(receivers) | {tm.source}
    parent_of = {}
    for r in order:
        v = r
        while v != tm.source and v not in parent_of:
            parents = tm.parents(v)
            attached = [p for p in parents if p in in_tree]
            if attached:
                parent_of[v] = attached[0]
                break
            p = parents[int(rng.integers(len(parents)))] if len(parents) > 1 else parents[0]
            parent_of[v] = p
            in_tree.add(p)
            v = p
    return MulticastTree(tm.source, receivers, parent_of)


def lca_assign_channels(tree: MulticastTree, levels: LevelDecomposition, C: int) -> ChannelAssignment:
    """Level ``i`` receives on ``(i-1) mod C`` and sends on ``i mod C``; the source sends on 0.

    Every tree node gets an SI, leaves included (their SI serves mesh clients).
    """
    if C < 1:
        raise ValueError("C must be >= 1")
    ri, si = {}, {tree.source: 0}
    for u in tree.tree_nodes - {tree.source}:
        i = levels.level[u]
        ri[u] = (i - 1) % C
        si[u] = i % C
    return ChannelAssignment(ri, si, C)
