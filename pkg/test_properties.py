#!/usr/bin/env python3
"""Property-based tests over random finite spaces, ultrametrics and bipartite graphs."""

import itertools
import os
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

_ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, _ROOT)

from proxgraph.bigraph import (
    BipartiteGraph, cbd_decompose, components, core, find_isomorphism, is_complete_bipartite, relabel,
    verify_isomorphism,
)
from proxgraph.dynamics import random_cyclic_nonexpansive
from proxgraph.metric_space import (
    FiniteSpace, Level, ball_partition, classify, closed_ball, distance_set, is_ultrametric,
    pushforward, reciprocal, shift, subspace,
)
from proxgraph.proximity import farthest_graph, proximinal_graph, ultrametric_structure
from proxgraph.realize import DecisionLevel, Target, decide, realize_metric, realize_ultrametric
from proxgraph.sweeps import random_ultrametric

_SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])

_rationals = st.builds(Fraction, st.integers(min_value=1, max_value=9), st.integers(min_value=1, max_value=4))


@st.composite
def spaces_with_parts(draw, max_points=7):
    """A random semimetric space with two disjoint nonempty parts."""
    n = draw(st.integers(min_value=2, max_value=max_points))
    labels = [f"p{i}" for i in range(n)]
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        rows[i][j] = rows[j][i] = draw(_rationals)
    order = draw(st.permutations(labels))
    size_a = draw(st.integers(min_value=1, max_value=n - 1))
    size_b = draw(st.integers(min_value=1, max_value=n - size_a))
    return FiniteSpace(labels, rows), list(order[:size_a]), list(order[size_a:size_a + size_b])


@st.composite
def ultrametrics_with_parts(draw, max_points=8):
    n = draw(st.integers(min_value=2, max_value=max_points))
    rng = np.random.default_rng(draw(st.integers(min_value=0, max_value=2 ** 32 - 1)))
    space = random_ultrametric(rng, n, [1, 2, 3, 4])
    order = draw(st.permutations(list(space.points)))
    size_a = draw(st.integers(min_value=1, max_value=n - 1))
    size_b = draw(st.integers(min_value=1, max_value=n - size_a))
    return space, list(order[:size_a]), list(order[size_a:size_a + size_b])


@st.composite
def bipartite_graphs(draw, max_part_size=3):
    p = draw(st.integers(min_value=1, max_value=max_part_size))
    q = draw(st.integers(min_value=1, max_value=max_part_size))
    part_a = [f"a{i}" for i in range(1, p + 1)]
    part_b = [f"b{j}" for j in range(1, q + 1)]
    cross = list(itertools.product(part_a, part_b))
    edges = draw(st.sets(st.sampled_from(cross)))
    return BipartiteGraph(part_a, part_b, frozenset(edges))


@_SETTINGS
@given(spaces_with_parts())
def test_farthest_graph_is_reciprocal_proximinal_graph(case):
    space, a_set, b_set = case
    assert farthest_graph(space, a_set, b_set) == proximinal_graph(reciprocal(space), a_set, b_set)


@_SETTINGS
@given(spaces_with_parts(), _rationals)
def test_shift_keeps_proximinal_graph(case, c):
    space, a_set, b_set = case
    assert proximinal_graph(shift(space, c), a_set, b_set) == proximinal_graph(space, a_set, b_set)


@_SETTINGS
@given(spaces_with_parts(), st.data())
def test_restriction_keeps_proximinal_graph(case, data):
    space, a_set, b_set = case
    rest = [p for p in space.points if p not in a_set and p not in b_set]
    extra = data.draw(st.lists(st.sampled_from(rest), unique=True)) if rest else []
    restricted = subspace(space, a_set + b_set + extra)
    assert proximinal_graph(restricted, a_set, b_set) == proximinal_graph(space, a_set, b_set)


@_SETTINGS
@given(spaces_with_parts())
def test_proximinal_graph_is_nonempty(case):
    space, a_set, b_set = case
    assert not proximinal_graph(space, a_set, b_set).is_empty


@_SETTINGS
@given(bipartite_graphs())
def test_metric_witness_round_trip(g):
    assume(not g.is_empty)
    witness = realize_metric(g)
    assert classify(witness).level >= Level.METRIC
    assert len(distance_set(witness)) <= 3
    assert proximinal_graph(witness, g.part_a, g.part_b) == g


@_SETTINGS
@given(bipartite_graphs())
def test_ultrametric_witness_round_trip(g):
    assume(not g.is_empty and cbd_decompose(g).all_complete)
    witness = realize_ultrametric(g)
    assert is_ultrametric(witness)
    assert proximinal_graph(witness, g.part_a, g.part_b) == g


@_SETTINGS
@given(bipartite_graphs(), st.sampled_from(list(DecisionLevel)))
def test_proximinal_implies_farthest(g, level):
    if decide(g, Target.PROXIMINAL_METRIC, level).realizable:
        assert decide(g, Target.FARTHEST, level).realizable


@_SETTINGS
@given(ultrametrics_with_parts())
def test_ultrametric_structure_equivalences(case):
    space, a_set, b_set = case
    s = ultrametric_structure(space, a_set, b_set)
    assert (s.diam_b <= s.dist) == (s.b0_equals_b and s.all_pairs_best)
    assert (s.diam_b <= s.dist) == (s.core_complete_bipartite and s.b_in_core)
    assert s.graph_connected == (s.diam_union <= s.dist) == s.graph_complete_bipartite


@_SETTINGS
@given(ultrametrics_with_parts())
def test_balls_nest_or_are_disjoint(case):
    space, _, _ = case
    radii = distance_set(space)
    for r in radii:
        blocks = ball_partition(space, r).blocks
        assert sorted(m for b in blocks for m in b.members) == sorted(space.points)
        for block in blocks:
            assert all(closed_ball(space, a, r).members == block.members for a in block.members)
    for c1, c2 in itertools.product(space.points, repeat=2):
        for r1, r2 in itertools.combinations_with_replacement(radii, 2):
            small = set(closed_ball(space, c1, r1).members)
            large = set(closed_ball(space, c2, r2).members)
            assert not (small & large) or small <= large


def _scan_classify(space):
    """Plain triple loop over point indices, in lexicographic order."""
    points = space.points
    triples = list(itertools.product(range(len(points)), repeat=3))
    d = [[space.d(p, q) for q in points] for p in points]
    for x, y, z in triples:
        if d[x][y] > d[x][z] + d[z][y]:
            return Level.SEMIMETRIC, (points[x], points[y], points[z])
    for x, y, z in triples:
        if d[x][y] > max(d[x][z], d[z][y]):
            return Level.METRIC, (points[x], points[y], points[z])
    return Level.ULTRAMETRIC, None


@_SETTINGS
@given(st.one_of(spaces_with_parts(), ultrametrics_with_parts()))
def test_classification_matches_triple_scan(case):
    space, _, _ = case
    verdict = classify(space)
    level, witness = _scan_classify(space)
    assert verdict.level is level
    assert (verdict.violation or None) == witness
    assert is_ultrametric(space) == (level is Level.ULTRAMETRIC)


@_SETTINGS
@given(spaces_with_parts(), st.data())
def test_pushforward_keeps_distance_set(case, data):
    space, a_set, b_set = case
    names = data.draw(st.permutations([f"q{i}" for i in range(len(space.points))]))
    mapping = dict(zip(space.points, names))
    moved = pushforward(space, mapping)
    assert distance_set(moved) == distance_set(space)
    assert proximinal_graph(moved, [mapping[a] for a in a_set], [mapping[b] for b in b_set]) \
        == relabel(proximinal_graph(space, a_set, b_set), mapping)


@_SETTINGS
@given(bipartite_graphs())
def test_core_is_idempotent_and_components_meet_both_parts(g):
    assume(not g.is_empty)
    g_core = core(g)
    assert core(g_core) == g_core
    for comp in components(g_core):
        assert set(comp) & set(g_core.part_a) and set(comp) & set(g_core.part_b)


@_SETTINGS
@given(bipartite_graphs(), st.data())
def test_decomposition_survives_relabeling(g, data):
    assume(not g.is_empty)
    names = data.draw(st.permutations([f"v{i}" for i in range(len(g.vertices))]))
    mapping = dict(zip(g.vertices, names))
    before, after = cbd_decompose(g), cbd_decompose(relabel(g, mapping))
    assert before.all_complete == after.all_complete
    assert len(before.components) == len(after.components)


@_SETTINGS
@given(bipartite_graphs())
def test_complete_bipartite_iff_single_complete_component(g):
    assume(not g.is_empty)
    # first component of G', as a graph with no isolated vertices
    comp = set(components(core(g))[0])
    piece = BipartiteGraph([v for v in g.part_a if v in comp], [v for v in g.part_b if v in comp],
                           frozenset(e for e in g.edges if e[0] in comp))
    decomposition = cbd_decompose(piece)
    assert len(decomposition.components) == 1
    assert is_complete_bipartite(piece) == decomposition.all_complete


@_SETTINGS
@given(bipartite_graphs(), bipartite_graphs(), st.data())
def test_isomorphisms_keep_counts_and_degrees(g, other, data):
    names = data.draw(st.permutations([f"v{i}" for i in range(len(g.vertices))]))
    mapping = dict(zip(g.vertices, names))
    pairs = [(mapping, relabel(g, mapping))]
    found = find_isomorphism(g, other)
    if found is not None:
        pairs.append((found, other))
    for f, h in pairs:
        assert verify_isomorphism(f, g, h)
        assert len(g.vertices) == len(h.vertices) and len(g.edges) == len(h.edges)
        assert g.degree_multiset() == h.degree_multiset()


@_SETTINGS
@given(spaces_with_parts(), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_cyclic_iterates_alternate_parts(case, seed):
    space, a_set, b_set = case
    cyclic_map, _ = random_cyclic_nonexpansive(space, a_set, b_set, np.random.default_rng(seed), attempts=20)
    for k in range(6):
        home, away = (set(a_set), set(b_set)) if k % 2 == 0 else (set(b_set), set(a_set))
        assert all(cyclic_map.iterate(a, k) in home for a in a_set)
        assert all(cyclic_map.iterate(b, k) in away for b in b_set)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
