"""
Cyclic Maps Module - cyclic nonexpansive self-maps of A ∪ B and the
proximinal graph edges they preserve.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import NotBestProximityPair, NotCyclic, NotTotal, PartsOverlap, PreconditionFailed
from .proximity import Mode, proximinal_graph, proximity_report

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CyclicMap:
    """A total map on A ∪ B sending A into B and B into A."""

    table: dict
    part_a: tuple
    part_b: tuple

    def __call__(self, x):
        return self.table[x]

    def iterate(self, x, k):
        for _ in range(k):
            x = self.table[x]
        return x


@dataclass(frozen=True)
class MapValidation:
    cyclic_map: CyclicMap
    nonexpansive: bool
    expansion_witness: tuple = None


@dataclass(frozen=True)
class HomomorphismVerdict:
    holds: bool
    edges_checked: int
    broken_edges: tuple = ()


def validate_map(table, space, a_set, b_set):
    """
    Check that ``table`` is a cyclic map on A ∪ B and test it for nonexpansiveness.

    Raises:
        NotTotal: if some point of A ∪ B has no image
        NotCyclic: if a point of A is not sent into B, or of B into A
    """
    a_set, b_set = tuple(a_set), tuple(b_set)
    common = sorted(set(a_set) & set(b_set))
    if common:
        raise PartsOverlap(f"Parts share the points {common}", points=common)
    for x in a_set + b_set:
        if x not in table:
            raise NotTotal(f"Map has no image for {x!r}", point=x)
    in_a, in_b = set(a_set), set(b_set)
    for x in a_set:
        if table[x] not in in_b:
            raise NotCyclic(f"{x!r} lies in A but maps to {table[x]!r}, outside B", point=x)
    for x in b_set:
        if table[x] not in in_a:
            raise NotCyclic(f"{x!r} lies in B but maps to {table[x]!r}, outside A", point=x)

    cyclic_map = CyclicMap({x: table[x] for x in a_set + b_set}, a_set, b_set)
    domain = list(a_set + b_set)
    source = space.indices(domain)
    image = space.indices([table[x] for x in domain])
    expanded = np.argwhere(np.asarray(
        space.dist[np.ix_(image, image)] > space.dist[np.ix_(source, source)], dtype=bool))
    if len(expanded):
        i, j = sorted(int(v) for v in expanded[0])
        return MapValidation(cyclic_map, False, (domain[i], domain[j]))
    return MapValidation(cyclic_map, True)


def _require_nonexpansive(cyclic_map, space):
    try:
        checked = validate_map(cyclic_map.table, space, cyclic_map.part_a, cyclic_map.part_b)
    except (NotCyclic, NotTotal) as e:
        raise PreconditionFailed(f"Map is not a cyclic map on A ∪ B: {e}", **e.details) from e
    if not checked.nonexpansive:
        x, y = checked.expansion_witness
        raise PreconditionFailed(
            f"Map expands the pair ({x}, {y}): d(F({x}), F({y})) > d({x}, {y})",
            witness=checked.expansion_witness)


def verify_self_homomorphism(cyclic_map, space, a_set=None, b_set=None):
    """
    Check that a cyclic nonexpansive map sends every proximinal-graph edge to an edge.

    A broken edge cannot occur for a genuine cyclic nonexpansive map; it is
    logged as an internal inconsistency and reported in the verdict.
    """
    a_set = tuple(a_set) if a_set is not None else cyclic_map.part_a
    b_set = tuple(b_set) if b_set is not None else cyclic_map.part_b
    if (set(a_set), set(b_set)) != (set(cyclic_map.part_a), set(cyclic_map.part_b)):
        raise PreconditionFailed("Map is cyclic over different parts")
    _require_nonexpansive(cyclic_map, space)
    graph = proximinal_graph(space, a_set, b_set)
    broken = tuple((a, b) for a, b in graph.sorted_edges()
                   if not graph.has_edge(cyclic_map(a), cyclic_map(b)))
    if broken:
        logger.error(f"Internal inconsistency: cyclic nonexpansive map breaks edges {broken}")
    return HomomorphismVerdict(not broken, len(graph.edges), broken)


def orbit_check(cyclic_map, space, a0, b0, steps):
    """
    Distances d(F^k(a0), F^k(b0)) for k = 1..steps along a best proximity pair.

    Raises:
        NotBestProximityPair: if (a0, b0) is not an edge of the proximinal graph
    """
    if steps < 1:
        raise PreconditionFailed(f"Orbit length must be positive, got {steps}")
    _require_nonexpansive(cyclic_map, space)
    report = proximity_report(space, cyclic_map.part_a, cyclic_map.part_b, Mode.PROXIMINAL)
    if (a0, b0) not in report.pairs:
        raise NotBestProximityPair(f"({a0}, {b0}) is not a best proximity pair", pair=(a0, b0))
    distances = []
    a, b = a0, b0
    for _ in range(steps):
        a, b = cyclic_map(a), cyclic_map(b)
        distances.append(space.d(a, b))
    return distances


def random_cyclic_nonexpansive(space, a_set, b_set, rng, attempts=200):
    """
    Rejection-sample a cyclic table until one is nonexpansive.

    Falls back to collapsing A onto b* and B onto a* for the first best
    proximity pair (a*, b*), which is always cyclic and nonexpansive.

    Returns:
        tuple: (CyclicMap, sampled) where ``sampled`` is False for the fallback
    """
    a_set, b_set = tuple(a_set), tuple(b_set)
    for _ in range(attempts):
        table = {a: b_set[int(rng.integers(len(b_set)))] for a in a_set}
        table.update({b: a_set[int(rng.integers(len(a_set)))] for b in b_set})
        checked = validate_map(table, space, a_set, b_set)
        if checked.nonexpansive:
            return checked.cyclic_map, True
    a_star, b_star = proximity_report(space, a_set, b_set).pairs[0]
    table = {a: b_star for a in a_set}
    table.update({b: a_star for b in b_set})
    return validate_map(table, space, a_set, b_set).cyclic_map, False
