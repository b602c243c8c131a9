"""Dual autowaves against a single wave and Dijkstra on a grid and on a mesh."""
import numpy as np

from meshcast import (WaveState, WeightedGraph, dijkstra_oracle, dspcnn_shortest_path,
                      generate_random_mesh, mesh_to_weighted, pcnn_shortest_path)

k = 20
edges = [(r * k + c, r * k + c + 1, 1) for r in range(k) for c in range(k - 1)]
edges += [(r * k + c, (r + 1) * k + c, 1) for r in range(k - 1) for c in range(k)]
g = WeightedGraph(k * k, tuple(edges), 0, k * k - 1)

state = WaveState()
dual = dspcnn_shortest_path(g, state)
single = pcnn_shortest_path(g)
oracle = dijkstra_oracle(g)
print("lengths:", dual.length, single.length, oracle.length)
print("neurons fired: dual", dual.fired_count, "single", single.fired_count)
print("fronts met at:", state.meeting)

rng = np.random.default_rng(0)
ratios = []
for _ in range(100):
    s, t = (int(x) for x in rng.choice(k * k, 2, replace=False))
    gg = g.with_endpoints(s, t)
    ratios.append(dspcnn_shortest_path(gg).fired_count / pcnn_shortest_path(gg).fired_count)
print(f"mean fired ratio over 100 pairs: {np.mean(ratios):.3f}")

# shortest euclidean route from source to a receiver in a random mesh
net = generate_random_mesh(30, 1000, 250, 5, 1)
mg = mesh_to_weighted(net, "euclidean", goal=min(net.receivers))
res = dspcnn_shortest_path(mg)
print("mesh route:", [mg.labels[i] for i in res.path], f"length {res.length:.1f}")
