"""Build LCA and MCM multicast trees on the bundled fixtures and on a random mesh."""
from meshcast import bfs_levels, build_tree_mesh, generate_random_mesh, lca_build_tree, mcm_build_tree
from meshcast.io import fixture_network

# The small worked network: source s, receivers e, f, g.
net = fixture_network("fig1")
levels = bfs_levels(net)
tm = build_tree_mesh(net, levels)
print("levels:", dict(sorted(levels.level.items())))

# LCA climbs from each receiver towards the source, joining the tree as early as it can.
lca = lca_build_tree(tm, net.receivers, seed=0, order=["g", "e", "f"])
print("LCA edges (child, parent):", sorted(lca.edges))
print("LCA relays:", sorted(lca.relay_set))

# MCM picks, level by level, the fewest relays that cover the nodes below.
net3 = fixture_network("fig3")
mcm = mcm_build_tree(build_tree_mesh(net3, bfs_levels(net3)), net3.receivers)
print("MCM relays on fig3:", sorted(mcm.relay_set))

# On random meshes MCM usually needs fewer relays.
for seed in range(5):
    g = generate_random_mesh(30, 1000, 250, 5, seed)
    tm = build_tree_mesh(g, bfs_levels(g))
    a = len(lca_build_tree(tm, g.receivers, seed).relay_set)
    b = len(mcm_build_tree(tm, g.receivers).relay_set)
    print(f"seed {seed}: LCA {a} relays, MCM {b} relays")
