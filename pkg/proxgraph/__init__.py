"""
proxgraph - proximinal and farthest graphs of finite semimetric spaces.

Exact rational distance spaces, bipartite graph tooling, realization
decisions with witness constructions, cyclic-map dynamics and seeded
invariant sweeps.
"""

__version__ = "1.0.0"

from .errors import ParseError, ProxGraphError
from .metric_space import (
    Ball, BallPartition, FiniteSpace, Level, SpaceClass, ball_partition, classify, closed_ball,
    diameter, distance_set, hamming_space, is_ultrametric, pushforward, reciprocal, set_distance,
    shift, subspace, trivial_space, validate_space,
)
from .bigraph import (
    BipartiteGraph, cbd_decompose, complete_bipartite_graph, components, core, find_isomorphism,
    is_complete_bipartite, relabel, validate_graph, verify_isomorphism,
)
from .proximity import (
    Mode, farthest_graph, farthest_points, is_proximinal, proximinal_graph, proximity_report,
    ultrametric_structure,
)
from .realize import (
    CountableFamily, Decision, DecisionLevel, FamilyKind, Reason, TaggedPoint, Target,
    countable_family, decide, family_best_approximation, family_distance, min_distance_set_size,
    realize_farthest, realize_metric, realize_ultrametric, transfer_witness,
)
from .dynamics import CyclicMap, orbit_check, random_cyclic_nonexpansive, validate_map, verify_self_homomorphism
from .oracle import enumerate_proximinal_graphs, oracle_witness
from .dot_export import export_dot
from .sweeps import SUITES, SweepRunner
from .utils import setup_logging, validate_config, load_yaml_config, merge_config
