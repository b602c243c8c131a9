import pytest

from meshcast import (CoverInstance, InterferenceParams, MeshNetwork, MulticastTree,
                      UncoverableError, ascending_assignment, bfs_levels, check_link_contract,
                      generate_random_mesh, heuristic_assignment, mcm_build_tree, min_relay_cover)

from conftest import FIG3_EXPECTED_EDGES, brute_min_cover_size, chain, tree_mesh_of


def cover(targets, coverage):
    return CoverInstance(frozenset(targets), {k: frozenset(v) for k, v in coverage.items()})


def test_cover_picks_full_coverage_node():
    assert min_relay_cover(cover({6, 7, 8}, {4: {6, 7, 8}, 5: {7, 8}})) == {4}


def test_cover_empty_targets():
    assert min_relay_cover(cover(set(), {1: {2}})) == set()


def test_cover_prefers_single_covering_set():
    inst = cover({"t1", "t2"}, {"a": {"t1"}, "b": {"t2"}, "c": {"t1", "t2"}})
    assert min_relay_cover(inst) == {"c"}
    assert brute_min_cover_size(inst.targets, inst.coverage) == 1


def test_cover_tie_breaks_to_smallest_id():
    assert min_relay_cover(cover({9}, {5: {9}, 3: {9}, 7: {9}})) == {3}


def test_cover_raises_when_target_unreachable():
    with pytest.raises(UncoverableError):
        min_relay_cover(cover({1, 2}, {0: {1}}))


def test_greedy_is_not_optimal_on_adversarial_instance():
    inst = cover(range(1, 7), {"x": {1, 2, 3}, "y": {4, 5, 6}, "z": {1, 2, 4, 5}})
    assert len(min_relay_cover(inst)) == 3
    assert brute_min_cover_size(inst.targets, inst.coverage) == 2


def test_fig3_tree(fig3):
    tree = mcm_build_tree(tree_mesh_of(fig3), fig3.receivers)
    assert tree.relay_set == {2, 4}
    assert tree.edges == FIG3_EXPECTED_EDGES


def test_level_one_receivers_need_no_relays():
    net = MeshNetwork.build({0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (-1, 0)}, 1.0, 0, [1, 2, 3])
    tree = mcm_build_tree(tree_mesh_of(net), net.receivers)
    assert tree.parent_of == {1: 0, 2: 0, 3: 0}
    assert tree.relay_set == set()


@pytest.mark.parametrize("seed", range(40))
def test_greedy_levels_match_brute_force_on_small_instances(seed):
    net = generate_random_mesh(12, 500, 180, 4, seed)
    lv = bfs_levels(net)
    tm = tree_mesh_of(net)
    tree = mcm_build_tree(tm, net.receivers)
    top = max(lv.level[r] for r in net.receivers)
    for i in range(top - 1, -1, -1):
        targets = {u for u in tree.tree_nodes if lv.level[u] == i + 1}
        inst = CoverInstance.from_tree_mesh(tm, i, targets)
        chosen = {u for u in tree.tree_nodes if lv.level[u] == i and tree.children.get(u)}
        assert set().union(*(inst.coverage[c] for c in chosen)) >= targets
        assert len(chosen) == brute_min_cover_size(targets, inst.coverage)
    for r in net.receivers:
        assert tree.depth(r) == lv.level[r]


def test_ascending_on_fig3(fig3):
    tree = mcm_build_tree(tree_mesh_of(fig3), fig3.receivers)
    a = ascending_assignment(tree, 3)
    assert a.si == {1: 0, 2: 1, 4: 2}
    assert a.ri == {2: 0, 4: 1, 6: 2, 7: 2, 8: 2}
    check_link_contract(tree, a)


def test_ascending_single_channel(fig3):
    tree = mcm_build_tree(tree_mesh_of(fig3), fig3.receivers)
    a = ascending_assignment(tree, 1)
    assert set(a.si.values()) == {0} and set(a.ri.values()) == {0}


def test_ascending_wraps_on_deep_chain():
    net = chain(4)
    tree = mcm_build_tree(tree_mesh_of(net), {4})
    a = ascending_assignment(tree, 3)
    assert [a.si[u] for u in range(4)] == [0, 1, 2, 0]
    check_link_contract(tree, a)


def test_heuristic_lone_forwarder_falls_back():
    net = MeshNetwork.build({0: (0, 0), 1: (100, 0)}, 100, 0, [1])
    tree = MulticastTree(0, frozenset({1}), {1: 0})
    a = heuristic_assignment(tree, net, 3, 0.5)
    assert a.si == {0: 0}
    assert a.ri == {1: 0}


def test_heuristic_moves_away_from_neighbor_channel():
    # v=0 sends on 0; u=1 relays to 2 and sees v as its only assigned neighbour
    net = MeshNetwork.build({0: (0, 0), 1: (100, 0), 2: (200, 0)}, 100, 0, [2])
    tree = MulticastTree(0, frozenset({2}), {1: 0, 2: 1})
    trace = []
    a = heuristic_assignment(tree, net, 3, 0.5, trace=trace)
    assert a.si[1] == 2
    R2 = 100.0 ** 2
    assert trace[1][2] == pytest.approx((R2, R2 * 0.25, R2 * 0.0625), rel=1e-12)
    check_link_contract(tree, a)


@pytest.mark.parametrize("seed", range(25))
def test_heuristic_local_optimality(seed):
    net = generate_random_mesh(30, 1000, 250, 10, seed)
    tree = mcm_build_tree(tree_mesh_of(net), net.receivers)
    a = heuristic_assignment(tree, net, 3, 0.5)
    check_link_contract(tree, a)
    p = InterferenceParams(250, 0.5)
    order = tree.forwarding_nodes
    for k, u in enumerate(order):
        before = [v for v in order[:k] if net.distance(u, v) <= 500]
        if not before:
            continue

        def cost(c):
            return sum((p.R * p.delta ** abs(c - a.si[v])) ** 2 for v in before)

        assert all(cost(a.si[u]) <= cost(c) for c in range(3))
