"""Slotted simulation: how throughput responds to the number of channels."""
import numpy as np

from meshcast import (SimConfig, bfs_levels, build_tree_mesh, generate_random_mesh,
                      heuristic_assignment, mcm_build_tree, simulate_multicast)

results = {C: [] for C in (1, 2, 3, 4)}
for seed in range(20):
    net = generate_random_mesh(30, 1000, 250, 5, seed)
    tree = mcm_build_tree(build_tree_mesh(net, bfs_levels(net)), net.receivers)
    cfg = SimConfig(slots=500, packets_per_slot_at_source=1.0, seed=seed)
    for C in results:
        m = simulate_multicast(net, tree, heuristic_assignment(tree, net, C), cfg)
        results[C].append((m.throughput, m.avg_delay, m.conflict_losses))

for C, rows in results.items():
    arr = np.array(rows)
    print(f"C={C}: throughput {arr[:, 0].mean():.3f}  delay {arr[:, 1].mean():.1f}  "
          f"losses {arr[:, 2].mean():.0f}")
