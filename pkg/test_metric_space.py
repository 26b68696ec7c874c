#!/usr/bin/env python3
"""Tests for finite semimetric spaces: axioms, classification, balls and transforms."""

import os
import sys
from fractions import Fraction

import pytest

_ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, _ROOT)

from proxgraph.errors import (
    AsymmetricMatrix, DimensionMismatch, DuplicateLabel, EmptySet, NegativeDistance,
    NonpositiveShift, NonzeroDiagonal, NotBijective, NotUltrametric, ParseError, PartsOverlap,
    UnknownPart, UnknownPoint, ZeroOffDiagonal,
)
from proxgraph.metric_space import (
    FiniteSpace, Level, ball_partition, classify, closed_ball, diameter, distance_set,
    hamming_space, is_ultrametric, pushforward, reciprocal, set_distance, shift, subspace,
    trivial_space, validate_space,
)
from proxgraph.proximity import farthest_graph, proximinal_graph
from proxgraph.utils import parse_rational

A = ['100', '010', '001', '111']
B = ['110', '101', '011', '000']


def hamming():
    return hamming_space(3, {'A': A, 'B': B})


def two_blocks():
    return FiniteSpace.from_function(
        ['a', 'b', 'c', 'e'],
        lambda x, y: 1 if {x, y} in ({'a', 'b'}, {'c', 'e'}) else 2)


def test_construction():
    single = FiniteSpace(['p'], [[0]])
    assert len(single) == 1 and single.d('p', 'p') == 0
    assert len(hamming()) == 8
    assert hamming().part('A') == tuple(A)


def test_axiom_errors():
    with pytest.raises(ZeroOffDiagonal):
        FiniteSpace(['a', 'b'], [[0, 0], [0, 0]])
    with pytest.raises(NonzeroDiagonal):
        FiniteSpace(['a', 'b'], [[1, 1], [1, 0]])
    with pytest.raises(NegativeDistance):
        FiniteSpace(['a', 'b'], [[0, -1], [-1, 0]])
    with pytest.raises(AsymmetricMatrix) as info:
        FiniteSpace(['a', 'b'], [[0, 1], [2, 0]])
    assert info.value.details['indices'] == (0, 1)
    with pytest.raises(DimensionMismatch):
        FiniteSpace(['a', 'b'], [[0, 1]])
    with pytest.raises(DuplicateLabel):
        FiniteSpace(['a', 'a'], [[0, 1], [1, 0]])
    with pytest.raises(EmptySet):
        FiniteSpace([], [])
    with pytest.raises(UnknownPoint):
        FiniteSpace(['a', 'b'], [[0, 1], [1, 0]], {'A': ['z']})
    with pytest.raises(PartsOverlap):
        FiniteSpace(['a', 'b'], [[0, 1], [1, 0]], {'A': ['a'], 'B': ['a', 'b']})


def test_space_is_immutable():
    space = hamming()
    with pytest.raises(AttributeError):
        space.points = ('x',)
    with pytest.raises(ValueError):
        space.dist[0, 1] = 5
    with pytest.raises(UnknownPart):
        space.part('C')


def test_validate_space_parses_rationals():
    space = validate_space({
        'points': ['x', 'y'],
        'distances': [['0', '4/6'], ['2/3', '0']],
        'parts': {'A': ['x'], 'B': ['y']},
    })
    assert space.d('x', 'y') == Fraction(2, 3)
    with pytest.raises(ParseError):
        validate_space({'points': ['x', 'y'], 'distances': [['0', '1/0'], ['1', '0']]})
    with pytest.raises(ParseError):
        validate_space({'points': ['x', 'y'], 'distances': [['0', 'one'], ['1', '0']]})
    for parts in ([['x'], ['y']], {'A': 'x'}):
        with pytest.raises(ParseError):
            validate_space({'points': ['x', 'y'], 'distances': [['0', '1'], ['1', '0']], 'parts': parts})


def test_parse_rational():
    assert parse_rational('3') == 3
    assert parse_rational('-2/4') == Fraction(-1, 2)
    assert parse_rational(Fraction(1, 3)) == Fraction(1, 3)
    for bad in ('1.5', '', '2/', True, 1.5):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_classify():
    assert classify(trivial_space(['a', 'b', 'c'])).level is Level.ULTRAMETRIC
    verdict = classify(hamming())
    assert verdict.level is Level.METRIC
    x, y, z = verdict.violation
    space = hamming()
    assert space.d(x, y) > max(space.d(x, z), space.d(z, y))
    semi = FiniteSpace(['x', 'y', 'z'], [[0, 5, 1], [5, 0, 1], [1, 1, 0]])
    verdict = classify(semi)
    assert verdict.level is Level.SEMIMETRIC
    assert verdict.violation == ('x', 'y', 'z')
    assert Level.ULTRAMETRIC.label == 'Ultrametric'


def test_classify_with_fractions():
    space = FiniteSpace(['x', 'y', 'z'], [
        [0, Fraction(1, 3), Fraction(1, 2)],
        [Fraction(1, 3), 0, Fraction(1, 6)],
        [Fraction(1, 2), Fraction(1, 6), 0],
    ])
    # 1/2 = 1/3 + 1/6 exactly, so the triangle inequality holds with equality
    assert classify(space).level is Level.METRIC
    assert not is_ultrametric(space)


def test_distance_set_and_diameter():
    assert distance_set(FiniteSpace(['p'], [[0]])) == [0]
    assert distance_set(hamming()) == [0, 1, 2, 3]
    assert diameter(hamming(), ['100']) == 0
    assert diameter(hamming(), A) == 2
    assert diameter(trivial_space(['a', 'b', 'c']), ['a', 'b', 'c']) == 1


def test_set_distance():
    space = hamming()
    assert set_distance(space, ['000'], ['000']) == 0
    assert set_distance(space, A, B) == 1
    assert set_distance(trivial_space(['a', 'b', 'c']), ['a'], ['b', 'c']) == 1
    assert set_distance(space, '000', '111') == 3
    with pytest.raises(EmptySet):
        set_distance(space, [], B)


def test_closed_ball():
    space = hamming()
    assert closed_ball(space, '000', 0).members == ('000',)
    assert set(closed_ball(space, '000', 3).members) == set(space.points)
    assert closed_ball(trivial_space(['a', 'b']), 'a', Fraction(1, 2)).members == ('a',)
    assert '001' in closed_ball(space, '000', 1)
    with pytest.raises(NegativeDistance):
        closed_ball(space, '000', -1)


def test_ball_partition():
    space = two_blocks()
    partition = ball_partition(space, 1)
    assert [b.members for b in partition.blocks] == [('a', 'b'), ('c', 'e')]
    assert partition.representatives == ('a', 'c')
    assert len(ball_partition(space, 0).blocks) == 4
    assert [b.members for b in ball_partition(space, 2).blocks] == [('a', 'b', 'c', 'e')]
    with pytest.raises(NotUltrametric) as info:
        ball_partition(hamming(), 1)
    assert len(info.value.details['violation']) == 3


def test_shift_preserves_proximinal_graph():
    space = hamming()
    shifted = shift(space, 1)
    assert shifted.d('000', '001') == 2 and shifted.d('000', '000') == 0
    assert proximinal_graph(shifted, A, B) == proximinal_graph(space, A, B)
    assert set_distance(shifted, A, B) == 2
    with pytest.raises(NonpositiveShift):
        shift(space, 0)


def test_reciprocal():
    trivial = trivial_space(['a', 'b', 'c'])
    assert reciprocal(trivial) == trivial
    space = hamming()
    assert reciprocal(reciprocal(space)) == space
    assert reciprocal(space).d('000', '111') == Fraction(1, 3)
    assert farthest_graph(space, A, B) == proximinal_graph(reciprocal(space), A, B)


def test_pushforward():
    space = hamming()
    assert pushforward(space, {p: p for p in space.points}) == space
    mapping = {p: f"v{p}" for p in space.points}
    moved = pushforward(space, mapping)
    g = proximinal_graph(space, A, B)
    h = proximinal_graph(moved, moved.part('A'), moved.part('B'))
    assert h.edges == {(mapping[a], mapping[b]) for a, b in g.edges}
    assert classify(pushforward(two_blocks(), {p: p.upper() for p in 'abce'})).level is Level.ULTRAMETRIC
    with pytest.raises(NotBijective):
        pushforward(space, {p: 'x' for p in space.points})


def test_subspace_keeps_proximinal_graph():
    space = hamming()
    small = subspace(space, A + B[:2])
    assert len(small) == 6
    assert small.part('B') == tuple(B[:2])
    assert proximinal_graph(small, A, B[:2]) == proximinal_graph(space, A, B[:2])
    with pytest.raises(UnknownPoint):
        subspace(space, ['zzz'])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
