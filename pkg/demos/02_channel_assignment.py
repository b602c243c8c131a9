"""Compare ascending and interference-aware channel assignment on one mesh."""
import itertools

from meshcast import (InterferenceParams, ascending_assignment, bfs_levels, build_tree_mesh,
                      generate_random_mesh, heuristic_assignment, interference_range, mcm_build_tree)

net = generate_random_mesh(30, 1000, 250, 10, seed=2)
tree = mcm_build_tree(build_tree_mesh(net, bfs_levels(net)), net.receivers)
p = InterferenceParams(net.comm_range, delta=0.5)

# interference range shrinks geometrically with channel separation
for sep in range(4):
    print(f"separation {sep}: IR = {interference_range(0, sep, p):.1f}")


def cost(a):
    # sum of squared IR over forwarder pairs within two hops of range
    fwd = tree.forwarding_nodes
    return sum(interference_range(a.si[u], a.si[v], p) ** 2
               for u, v in itertools.combinations(fwd, 2)
               if net.distance(u, v) <= 2 * net.comm_range)


asc = ascending_assignment(tree, 3)
heur = heuristic_assignment(tree, net, 3, delta=0.5)
print("forwarders:", tree.forwarding_nodes)
print("ascending SI:", {u: asc.si[u] for u in tree.forwarding_nodes}, "cost", cost(asc))
print("heuristic SI:", {u: heur.si[u] for u in tree.forwarding_nodes}, "cost", cost(heur))
