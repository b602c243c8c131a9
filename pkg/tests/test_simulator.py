import math

import pytest

from meshcast import (ChannelAssignment, ContractViolationError, MeshNetwork, MulticastTree,
                      SimConfig, ascending_assignment, bfs_levels, generate_random_mesh,
                      heuristic_assignment, mcm_build_tree, simulate_multicast)

from conftest import chain, tree_mesh_of

R = 100.0


def chain_run(spacing, C, slots, seed=0):
    net = chain(2, spacing=spacing, R=R)
    tree = mcm_build_tree(tree_mesh_of(net), net.receivers)
    return simulate_multicast(net, tree, ascending_assignment(tree, C), SimConfig(slots, 1.0, seed, 0.5))


def test_chain_pipeline_on_separated_channels():
    # senders 1.6R apart: inside 2R (co-channel conflict) but outside R + 0.5R
    m = chain_run(1.6 * R, 3, 100)
    assert m.delivered == {2: 99}
    assert m.throughput == pytest.approx(0.99)
    assert m.avg_delay == pytest.approx(2.0)
    assert m.conflict_losses == 0


def test_chain_single_channel_halves_throughput():
    m = chain_run(1.6 * R, 1, 10_000)
    assert abs(m.throughput - 0.5) < 0.03
    assert m.conflict_losses > 0


def test_adjacent_senders_always_conflict():
    # within R of each other the IR + R threshold is exceeded for any separation
    assert chain_run(R, 3, 2000).throughput == pytest.approx(chain_run(R, 1, 2000).throughput)


def test_single_hop_delivery():
    net = MeshNetwork.build({0: (0, 0), 1: (50, 0), 2: (0, 50), 3: (-50, 0)}, R, 0, [1, 2, 3])
    tree = mcm_build_tree(tree_mesh_of(net), net.receivers)
    m = simulate_multicast(net, tree, ascending_assignment(tree, 3), SimConfig(100, 1.0, 5, 0.5))
    assert m.delivered == {1: 100, 2: 100, 3: 100}
    assert m.avg_delay == 1.0
    assert m.throughput == 1.0


def test_fractional_rate():
    net = chain(1, R=R)
    tree = mcm_build_tree(tree_mesh_of(net), net.receivers)
    m = simulate_multicast(net, tree, ascending_assignment(tree, 2), SimConfig(100, 0.5, 0, 0.5))
    assert m.injected == 50
    assert m.delivered == {1: 50}
    assert m.throughput == 0.5


def test_contract_violation():
    net = chain(2, R=R)
    tree = MulticastTree(0, frozenset({2}), {1: 0, 2: 1})
    bad = ChannelAssignment({1: 0, 2: 0}, {0: 0, 1: 1}, 2)
    with pytest.raises(ContractViolationError):
        simulate_multicast(net, tree, bad, SimConfig(10))


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(slots=0)
    with pytest.raises(ValueError):
        SimConfig(packets_per_slot_at_source=0)


@pytest.mark.parametrize("seed", range(15))
def test_random_instance_invariants(seed):
    net = generate_random_mesh(30, 1000, 250, 6, seed)
    lv = bfs_levels(net)
    tree = mcm_build_tree(tree_mesh_of(net), net.receivers)
    a = heuristic_assignment(tree, net, 3, 0.5)
    cfg = SimConfig(400, 1.0, seed, 0.5)
    m = simulate_multicast(net, tree, a, cfg)
    assert m == simulate_multicast(net, tree, a, cfg)
    assert all(d <= m.injected for d in m.delivered.values())
    assert 0 <= m.throughput <= cfg.packets_per_slot_at_source
    if not math.isnan(m.avg_delay):
        assert m.avg_delay >= min(lv.level[r] for r in net.receivers)
