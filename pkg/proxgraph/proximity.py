"""
Proximity Module - proximinal and farthest graphs of a space with two parts.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bigraph import BipartiteGraph, components, core, is_complete_bipartite
from .errors import EmptySet, NotUltrametric, PartsOverlap
from .metric_space import Level, classify, diameter, set_distance

logger = logging.getLogger(__name__)


class Mode(Enum):
    PROXIMINAL = 'proximinal'
    FARTHEST = 'farthest'


@dataclass(frozen=True)
class ProximityReport:
    """
    Extremal cross pairs of (A, B).

    ``extremum`` is dist(A, B) in proximinal mode and the largest cross
    distance in farthest mode. ``witness_a`` / ``witness_b`` map every point
    of the space to its best (proximinal) or farthest approximation in A / B.
    """

    mode: Mode
    extremum: object
    a0: tuple
    b0: tuple
    pairs: tuple
    witness_a: dict
    witness_b: dict
    dist_a0_b0: object = None


def _parts(space, a_set, b_set):
    a_set, b_set = list(a_set), list(b_set)
    if not a_set or not b_set:
        raise EmptySet("Both parts must be nonempty")
    common = sorted(set(a_set) & set(b_set))
    if common:
        raise PartsOverlap(f"Parts share the points {common}", points=common)
    return space.indices(a_set), space.indices(b_set)


def _approximations(space, subset, pick):
    if not list(subset):
        raise EmptySet("Cannot approximate from an empty set")
    idx = space.indices(subset)
    block = space.dist[:, idx]
    witness = {}
    for x, row in zip(space.points, block):
        # argmin / argmax return the first hit, so ties go to the least index
        witness[x] = space.points[idx[int(pick(row))]]
    return witness


def is_proximinal(space, subset):
    """
    Best approximations in ``subset`` for every point of the space.

    Every nonempty subset of a finite space is proximinal; the returned map
    is the witness s(x) with d(x, s(x)) = dist(x, subset).
    """
    return _approximations(space, subset, np.argmin)


def farthest_points(space, subset):
    """For every point, a member of ``subset`` at the largest distance."""
    return _approximations(space, subset, np.argmax)


def proximity_report(space, a_set, b_set, mode=Mode.PROXIMINAL):
    mode = Mode(mode)
    ia, ib = _parts(space, a_set, b_set)
    block = space.dist[np.ix_(ia, ib)]
    extremum = block.min() if mode is Mode.PROXIMINAL else block.max()
    hits = np.argwhere(np.asarray(block == extremum, dtype=bool))
    pairs = tuple((space.points[ia[i]], space.points[ib[j]]) for i, j in hits)
    a0 = tuple(space.points[i] for k, i in enumerate(ia) if any(h[0] == k for h in hits))
    b0 = tuple(space.points[j] for k, j in enumerate(ib) if any(h[1] == k for h in hits))
    approximate = is_proximinal if mode is Mode.PROXIMINAL else farthest_points
    report = ProximityReport(
        mode=mode,
        extremum=extremum,
        a0=a0,
        b0=b0,
        pairs=pairs,
        witness_a=approximate(space, a_set),
        witness_b=approximate(space, b_set),
        dist_a0_b0=set_distance(space, a0, b0) if pairs else None,
    )
    logger.debug(f"{mode.value} report: extremum={extremum}, {len(pairs)} pairs")
    return report


def _graph(space, a_set, b_set, mode):
    report = proximity_report(space, a_set, b_set, mode)
    return BipartiteGraph(tuple(a_set), tuple(b_set), frozenset(report.pairs))


def proximinal_graph(space, a_set, b_set):
    """Edges are exactly the best proximity pairs of (A, B)."""
    # both parts must be proximinal; on a finite carrier the witness always exists
    is_proximinal(space, a_set)
    is_proximinal(space, b_set)
    return _graph(space, a_set, b_set, Mode.PROXIMINAL)


def farthest_graph(space, a_set, b_set):
    """Edges are exactly the cross pairs attaining the largest cross distance."""
    return _graph(space, a_set, b_set, Mode.FARTHEST)


@dataclass(frozen=True)
class UltrametricStructure:
    diam_a: object
    diam_b: object
    diam_union: object
    dist: object
    b0_equals_b: bool
    all_pairs_best: bool
    graph_connected: bool
    graph_complete_bipartite: bool
    graph_nonempty: bool
    core_complete_bipartite: bool
    b_in_core: bool


def ultrametric_structure(space, a_set, b_set):
    """
    Diameters, dist(A, B) and proximinal-graph shape flags for an ultrametric space.

    Raises:
        NotUltrametric: if the space breaks the strong triangle inequality
    """
    _parts(space, a_set, b_set)
    verdict = classify(space)
    if verdict.level is not Level.ULTRAMETRIC:
        raise NotUltrametric(f"Structure flags need an ultrametric space; strong triangle fails at "
                             f"{verdict.violation}", violation=verdict.violation)
    report = proximity_report(space, a_set, b_set, Mode.PROXIMINAL)
    graph = BipartiteGraph(tuple(a_set), tuple(b_set), frozenset(report.pairs))
    pairs = set(report.pairs)
    g_core = core(graph)
    return UltrametricStructure(
        diam_a=diameter(space, a_set),
        diam_b=diameter(space, b_set),
        diam_union=diameter(space, list(a_set) + list(b_set)),
        dist=report.extremum,
        b0_equals_b=set(report.b0) == set(b_set),
        all_pairs_best=all((a, b) in pairs for a in report.a0 for b in report.b0),
        graph_connected=len(components(graph)) == 1,
        graph_complete_bipartite=is_complete_bipartite(graph),
        graph_nonempty=not graph.is_empty,
        core_complete_bipartite=is_complete_bipartite(g_core),
        b_in_core=set(b_set) <= set(g_core.vertices),
    )
