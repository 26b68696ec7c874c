"""
Bipartite Graphs Module

Graphs with fixed parts A and B. Edges are stored as ``(a, b)`` tuples
oriented from part A to part B; connectivity and isomorphism search are
delegated to networkx.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass

import networkx as nx
from networkx.algorithms import isomorphism

from .errors import (
    EdgesOnInfiniteEmptyClaim, EdgeWithinPart, EmptyGraph, EmptyPart, NotBijective,
    ParseError, PartsOverlap, TooLarge, UnknownEndpoint,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_VERTICES = 12


@dataclass(frozen=True)
class BipartiteGraph:
    """
    A bipartite graph with fixed parts.

    ``a_infinite`` / ``b_infinite`` mark a listed part as a finite sample of
    an infinite part; such graphs must be empty.
    """

    part_a: tuple
    part_b: tuple
    edges: frozenset
    a_infinite: bool = False
    b_infinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'part_a', tuple(self.part_a))
        object.__setattr__(self, 'part_b', tuple(self.part_b))
        if not self.part_a or not self.part_b:
            raise EmptyPart("Both parts of a bipartite graph must be nonempty",
                            part='A' if not self.part_a else 'B')
        for name, part in (('A', self.part_a), ('B', self.part_b)):
            repeated = [v for v, count in Counter(part).items() if count > 1]
            if repeated:
                raise PartsOverlap(f"Part {name} lists {repeated} more than once", vertices=repeated)
        overlap = sorted(set(self.part_a) & set(self.part_b))
        if overlap:
            raise PartsOverlap(f"Vertices {overlap} lie in both parts", vertices=overlap)
        object.__setattr__(self, 'edges', frozenset(self._orient(e) for e in self.edges))
        if self.edges and (self.a_infinite or self.b_infinite):
            raise EdgesOnInfiniteEmptyClaim(
                "Infinite parts are only supported for empty graphs")

    def _orient(self, edge):
        u, v = tuple(edge)
        in_a, in_b = set(self.part_a), set(self.part_b)
        for w in (u, v):
            if w not in in_a and w not in in_b:
                raise UnknownEndpoint(f"Edge {{{u}, {v}}} has unknown endpoint {w!r}", vertex=w)
        if u in in_a and v in in_b:
            return (u, v)
        if v in in_a and u in in_b:
            return (v, u)
        raise EdgeWithinPart(f"Edge {{{u}, {v}}} has both ends in the same part", edge=(u, v))

    @property
    def vertices(self):
        return self.part_a + self.part_b

    @property
    def is_empty(self):
        return not self.edges

    @property
    def is_finite(self):
        return not (self.a_infinite or self.b_infinite)

    def has_edge(self, u, v):
        return (u, v) in self.edges or (v, u) in self.edges

    def degree(self, v):
        return sum(v in edge for edge in self.edges)

    def degree_multiset(self):
        return sorted(self.degree(v) for v in self.vertices)

    def vertex_index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    def sorted_edges(self):
        index = self.vertex_index()
        return sorted(self.edges, key=lambda e: (index[e[0]], index[e[1]]))

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(self.part_a, part='A')
        g.add_nodes_from(self.part_b, part='B')
        g.add_edges_from(self.edges)
        return g


def validate_graph(raw):
    """
    Build a BipartiteGraph from a parsed graph description.

    Args:
        raw (dict): ``{"A": [...], "B": [...], "edges": [[a, b], ...],
            "infinite": {"A": bool, "B": bool}}``; "infinite" is optional
    """
    if not isinstance(raw, dict):
        raise ParseError("Graph description must be a JSON object")
    part_a = [str(v) for v in _listed(raw, 'A')]
    part_b = [str(v) for v in _listed(raw, 'B')]
    edges = []
    for edge in _listed(raw, 'edges'):
        if not isinstance(edge, list) or len(edge) != 2:
            raise ParseError(f"Edge {edge!r} must be a list of exactly two endpoints")
        edges.append((str(edge[0]), str(edge[1])))
    infinite = raw.get('infinite') or {}
    if not isinstance(infinite, dict) or set(infinite) - {'A', 'B'} \
            or any(not isinstance(flag, bool) for flag in infinite.values()):
        raise ParseError("'infinite' must map A and B to true or false")
    return BipartiteGraph(part_a, part_b, frozenset(edges),
                          infinite.get('A', False), infinite.get('B', False))


def _listed(raw, key):
    value = raw.get(key)
    if value is None:
        return []
    if not isinstance(value, list):
        raise ParseError(f"{key!r} must be a list, got {type(value).__name__}")
    return value


def complete_bipartite_graph(part_a, part_b):
    return BipartiteGraph(part_a, part_b, frozenset(itertools.product(part_a, part_b)))


def core(g):
    """G': the subgraph on non-isolated vertices, keeping every edge."""
    if g.is_empty:
        raise EmptyGraph("The core G' is only defined for nonempty graphs")
    covered = {v for edge in g.edges for v in edge}
    return BipartiteGraph([v for v in g.part_a if v in covered],
                          [v for v in g.part_b if v in covered], g.edges)


def components(g):
    """Connected components as vertex tuples, ordered by least vertex index."""
    index = g.vertex_index()
    comps = [sorted(c, key=index.__getitem__) for c in nx.connected_components(g.to_networkx())]
    comps.sort(key=lambda c: index[c[0]])
    return [tuple(c) for c in comps]


def is_complete_bipartite(g):
    return len(g.edges) == len(g.part_a) * len(g.part_b)


@dataclass(frozen=True)
class Component:
    a_side: tuple
    b_side: tuple
    complete: bool


@dataclass(frozen=True)
class Decomposition:
    components: tuple
    all_complete: bool

    def first_incomplete(self):
        return next((c for c in self.components if not c.complete), None)


def cbd_decompose(g):
    """Split G' into connected components and flag the complete bipartite ones."""
    g_core = core(g)
    in_a = set(g_core.part_a)
    parts = []
    for comp in components(g_core):
        a_side = tuple(v for v in comp if v in in_a)
        b_side = tuple(v for v in comp if v not in in_a)
        complete = all((a, b) in g_core.edges for a in a_side for b in b_side)
        parts.append(Component(a_side, b_side, complete))
    decomposition = Decomposition(tuple(parts), all(c.complete for c in parts))
    logger.debug(f"cbd_decompose: {len(parts)} components, all_complete={decomposition.all_complete}")
    return decomposition


def _check_bijection(mapping, g, h):
    source, target = set(g.vertices), set(h.vertices)
    missing = [v for v in g.vertices if v not in mapping]
    if missing:
        raise NotBijective(f"Vertex map is undefined on {missing}", vertices=missing)
    images = [mapping[v] for v in g.vertices]
    if len(set(images)) != len(images) or set(images) != target or len(source) != len(target):
        raise NotBijective("Vertex map is not a bijection onto the target vertex set")


def verify_isomorphism(mapping, g, h, respect_parts=False):
    """
    Check that ``mapping`` is an isomorphism of g onto h.

    Part labels are ignored unless ``respect_parts`` is set, in which case
    part A must map onto part A and part B onto part B.
    """
    _check_bijection(mapping, g, h)
    if respect_parts and {mapping[v] for v in g.part_a} != set(h.part_a):
        return False
    for u, v in itertools.combinations(g.vertices, 2):
        if g.has_edge(u, v) != h.has_edge(mapping[u], mapping[v]):
            return False
    return True


def find_isomorphism(g, h, max_vertices=DEFAULT_MAX_VERTICES, respect_parts=False):
    """
    Search for an isomorphism of g onto h; None when none exists.

    Raises:
        TooLarge: if either graph has more than ``max_vertices`` vertices
    """
    for graph in (g, h):
        if len(graph.vertices) > max_vertices:
            raise TooLarge(f"Isomorphism search is limited to {max_vertices} vertices, "
                           f"got {len(graph.vertices)}", bound=max_vertices)
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    if g.degree_multiset() != h.degree_multiset():
        return None
    if respect_parts and (len(g.part_a), len(g.part_b)) != (len(h.part_a), len(h.part_b)):
        return None
    node_match = isomorphism.categorical_node_match('part', None) if respect_parts else None
    matcher = isomorphism.GraphMatcher(g.to_networkx(), h.to_networkx(), node_match=node_match)
    if not matcher.is_isomorphic():
        return None
    mapping = dict(matcher.mapping)
    return {v: mapping[v] for v in g.vertices}


def relabel(g, mapping):
    """Image of g under a vertex bijection; parts map to parts."""
    return BipartiteGraph([mapping[v] for v in g.part_a], [mapping[v] for v in g.part_b],
                          frozenset((mapping[a], mapping[b]) for a, b in g.edges),
                          g.a_infinite, g.b_infinite)
