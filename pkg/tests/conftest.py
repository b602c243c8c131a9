import itertools

import pytest

from meshcast import MeshNetwork, WeightedGraph, bfs_levels, build_tree_mesh
from meshcast.io import fixture_network

# Order in which the worked LCA example processes the receivers.
FIG1_NARRATIVE_ORDER = ["g", "e", "f"]
FIG1_EXPECTED_EDGES = {("g", "d"), ("d", "b"), ("b", "s"), ("e", "b"),
                       ("f", "c"), ("c", "a"), ("a", "s")}
FIG3_EXPECTED_EDGES = {(6, 4), (7, 4), (8, 4), (4, 2), (2, 1)}


@pytest.fixture
def fig1():
    return fixture_network("fig1")


@pytest.fixture
def fig3():
    return fixture_network("fig3")


def tree_mesh_of(net):
    return build_tree_mesh(net, bfs_levels(net))


def chain(length, spacing=100.0, R=100.0, receivers=None):
    """Nodes 0..length on a line with explicit consecutive edges."""
    pos = {i: (i * spacing, 0.0) for i in range(length + 1)}
    edges = [(i, i + 1) for i in range(length)]
    return MeshNetwork.build(pos, R, 0, receivers or [length], edges)


def hop_distances_brute(net):
    """Unit-weight Bellman-Ford relaxation; independent of any queue-based BFS."""
    dist = {u: float("inf") for u in net.nodes}
    dist[net.source] = 0
    for _ in range(net.node_count):
        for u, v in net.edges:
            if dist[u] + 1 < dist[v]:
                dist[v] = dist[u] + 1
            if dist[v] + 1 < dist[u]:
                dist[u] = dist[v] + 1
    return {u: d for u, d in dist.items() if d != float("inf")}


def brute_min_cover_size(targets, coverage):
    cands = sorted(coverage)
    for k in range(len(cands) + 1):
        for subset in itertools.combinations(cands, k):
            got = set().union(*(coverage[c] for c in subset)) if subset else set()
            if got >= set(targets):
                return k
    return None


def grid_edges(k):
    edges = []
    for r in range(k):
        for c in range(k):
            v = r * k + c
            if c + 1 < k:
                edges.append((v, v + 1, 1))
            if r + 1 < k:
                edges.append((v, v + k, 1))
    return edges


def random_connected_graph(rng, n_max=50, w_max=20, integer=True):
    """Random spanning tree plus extra random edges; endpoints drawn uniformly."""
    n = int(rng.integers(2, n_max + 1))
    weight = (lambda: int(rng.integers(1, w_max + 1))) if integer else (lambda: float(rng.uniform(0.1, w_max)))
    edges = [(v, int(rng.integers(v)), weight()) for v in range(1, n)]
    for _ in range(int(rng.integers(0, 2 * n))):
        u, v = rng.choice(n, 2, replace=False)
        edges.append((int(u), int(v), weight()))
    s, g = (int(x) for x in rng.integers(n, size=2))
    return WeightedGraph(n, tuple(edges), s, g)


def path_length(graph, path):
    return sum(graph.edge_length(a, b) for a, b in zip(path, path[1:]))


def is_connected_path(graph, path):
    return all(any(x == b for x, _ in graph.adjacency[a]) for a, b in zip(path, path[1:]))


# One line per acceptance criterion, echoed after the run.
ACCEPTANCE_LINES = []


def report(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
