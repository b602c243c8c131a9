"""Multicast trees, channel assignment, interference and autowave shortest paths for multi-radio mesh networks."""

from .dspcnn import (PathResult, WaveState, WaveTag, WeightedGraph, dijkstra_oracle,
                     dspcnn_shortest_path, mesh_to_weighted, pcnn_shortest_path)
from .errors import (ContractViolationError, MeshcastError, MissingSIError, NoPathError,
                     ScenarioError, UncoverableError, UnreachableReceiverError, UnsatisfiableError)
from .interference import (InterferenceParams, interference_range, links_conflict,
                           pairwise_objective, total_interference)
from .lca import lca_assign_channels, lca_build_tree
from .mcm import (CoverInstance, ascending_assignment, heuristic_assignment, mcm_build_tree,
                  min_relay_cover)
from .multicast import ChannelAssignment, MulticastTree, check_link_contract
from .simulator import SimConfig, SimMetrics, simulate_multicast
from .topology import (LevelDecomposition, MeshNetwork, TreeMesh, bfs_levels, build_tree_mesh,
                       generate_random_mesh)

__version__ = "0.1.0"
