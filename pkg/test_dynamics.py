#!/usr/bin/env python3
"""Tests for cyclic nonexpansive maps and their action on proximinal graphs."""

import os
import sys

import numpy as np
import pytest

_ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, _ROOT)

from proxgraph.bigraph import BipartiteGraph, complete_bipartite_graph
from proxgraph.dynamics import (
    CyclicMap, orbit_check, random_cyclic_nonexpansive, validate_map, verify_self_homomorphism,
)
from proxgraph.errors import NotBestProximityPair, NotCyclic, NotTotal, PreconditionFailed
from proxgraph.io import load_map, load_space
from proxgraph.metric_space import FiniteSpace, set_distance
from proxgraph.realize import realize_metric, realize_ultrametric
from proxgraph.sweeps import cube_graph

FIXTURES = os.path.join(_ROOT, 'fixtures')


def pair_space(value=1):
    return FiniteSpace(['a', 'b'], [[0, value], [value, 0]])


def test_swap_is_cyclic_and_nonexpansive():
    checked = validate_map({'a': 'b', 'b': 'a'}, pair_space(3), ['a'], ['b'])
    assert checked.nonexpansive and checked.expansion_witness is None
    assert checked.cyclic_map('a') == 'b' and checked.cyclic_map.iterate('a', 3) == 'b'


def test_validate_map_errors():
    space = realize_metric(complete_bipartite_graph(['a1', 'a2'], ['b1', 'b2']))
    with pytest.raises(NotCyclic):
        validate_map({'a1': 'a2', 'a2': 'b1', 'b1': 'a1', 'b2': 'a1'}, space, ['a1', 'a2'], ['b1', 'b2'])
    with pytest.raises(NotTotal):
        validate_map({'a1': 'b1', 'b1': 'a1'}, space, ['a1', 'a2'], ['b1', 'b2'])


def test_collapse_is_nonexpansive():
    space = realize_metric(complete_bipartite_graph(['a1', 'a2'], ['b1', 'b2']))
    table = {'a1': 'b1', 'a2': 'b1', 'b1': 'a1', 'b2': 'a1'}
    assert validate_map(table, space, ['a1', 'a2'], ['b1', 'b2']).nonexpansive


def test_self_homomorphism_on_swap():
    checked = validate_map({'a': 'b', 'b': 'a'}, pair_space(), ['a'], ['b'])
    verdict = verify_self_homomorphism(checked.cyclic_map, pair_space())
    assert verdict.holds and verdict.edges_checked == 1 and verdict.broken_edges == ()


def test_random_maps_on_cube_are_homomorphisms():
    q3 = cube_graph()
    space = realize_metric(q3)
    rng = np.random.default_rng(7)
    for _ in range(5):
        cyclic_map, _ = random_cyclic_nonexpansive(space, q3.part_a, q3.part_b, rng, attempts=50)
        assert verify_self_homomorphism(cyclic_map, space).holds


def test_expansive_map_is_rejected():
    # path a1 - b1 - a2 plus b2 far away; sending the edge (a1, b1) to (a2, b2) expands it
    g = BipartiteGraph(['a1', 'a2'], ['b1', 'b2'], frozenset([('a1', 'b1'), ('a2', 'b1')]))
    space = realize_metric(g)
    expansive = CyclicMap({'a1': 'b2', 'a2': 'b2', 'b1': 'a2', 'b2': 'a1'}, ('a1', 'a2'), ('b1', 'b2'))
    with pytest.raises(PreconditionFailed) as info:
        verify_self_homomorphism(expansive, space)
    assert len(info.value.details['witness']) == 2


def test_non_cyclic_map_fails_precondition():
    space = pair_space()
    stuck = CyclicMap({'a': 'a', 'b': 'a'}, ('a',), ('b',))
    with pytest.raises(PreconditionFailed) as info:
        verify_self_homomorphism(stuck, space)
    assert info.value.details['point'] == 'a'
    partial = CyclicMap({'a': 'b'}, ('a',), ('b',))
    with pytest.raises(PreconditionFailed):
        verify_self_homomorphism(partial, space)


def test_orbit_check_swap():
    space = load_space(os.path.join(FIXTURES, 'swap_space.json'))
    a_set, b_set = space.part('A'), space.part('B')
    cyclic_map = validate_map(load_map(os.path.join(FIXTURES, 'swap_map.json')), space, a_set, b_set).cyclic_map
    assert orbit_check(cyclic_map, space, 'a1', 'b1', 5) == [1] * 5
    assert orbit_check(cyclic_map, space, 'a2', 'b2', 3) == [set_distance(space, a_set, b_set)] * 3
    with pytest.raises(NotBestProximityPair):
        orbit_check(cyclic_map, space, 'a1', 'b2', 5)
    with pytest.raises(PreconditionFailed):
        orbit_check(cyclic_map, space, 'a1', 'b1', 0)


def test_orbit_on_ultrametric_witness():
    g = BipartiteGraph(['a1', 'a2', 'a3'], ['b1', 'b2', 'b3'],
                       frozenset([('a1', 'b1'), ('a1', 'b2'), ('a2', 'b1'), ('a2', 'b2'), ('a3', 'b3')]))
    space = realize_ultrametric(g)
    rng = np.random.default_rng(11)
    cyclic_map, _ = random_cyclic_nonexpansive(space, g.part_a, g.part_b, rng)
    for a0, b0 in sorted(g.edges):
        assert orbit_check(cyclic_map, space, a0, b0, 10) == [1] * 10


def test_random_fallback_collapses_onto_best_pair():
    space = pair_space(2)
    cyclic_map, sampled = random_cyclic_nonexpansive(space, ['a'], ['b'], np.random.default_rng(0), attempts=0)
    assert not sampled and cyclic_map.table == {'a': 'b', 'b': 'a'}


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
