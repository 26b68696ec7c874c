"""
Finite Semimetric Spaces Module

Points carry string labels, distances are exact ``Fraction`` values held in
a read-only numpy object matrix. Triple scans run on an integer rescaling
of the matrix whenever it fits in int64.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    AsymmetricMatrix, DimensionMismatch, DuplicateLabel, EmptySet, NegativeDistance,
    NonpositiveShift, NonzeroDiagonal, NotBijective, NotUltrametric, ParseError, PartsOverlap,
    UnknownPart, UnknownPoint, ZeroOffDiagonal,
)
from .utils import common_denominator, parse_rational

logger = logging.getLogger(__name__)

_INT64_SAFE = 2 ** 61
_SCAN_CHUNK = 16


class Level(IntEnum):
    """Classes of distance functions, ordered by strength."""

    SEMIMETRIC = 0
    METRIC = 1
    ULTRAMETRIC = 2

    @property
    def label(self):
        return self.name.capitalize()


class FiniteSpace:
    """
    A finite semimetric space with optional named parts.

    The constructor enforces every axiom of a semimetric: zero diagonal,
    positive off-diagonal entries, symmetry, distinct labels, and pairwise
    disjoint parts drawn from the point set.
    """

    __slots__ = ('points', 'dist', 'parts', '_index')

    def __init__(self, points, dist, parts=None):
        points = tuple(points)
        if not points:
            raise EmptySet("A space needs at least one point")
        index = {}
        for i, label in enumerate(points):
            if label in index:
                raise DuplicateLabel(
                    f"Duplicate point label {label!r} at indices {index[label]} and {i}",
                    indices=(index[label], i))
            index[label] = i

        n = len(points)
        rows = [list(row) for row in dist]
        if len(rows) != n or any(len(row) != n for row in rows):
            raise DimensionMismatch(f"Distance matrix must be {n}x{n} to match the point list")
        matrix = np.empty((n, n), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                matrix[i, j] = Fraction(value)

        _check_axioms(matrix)
        matrix.setflags(write=False)

        object.__setattr__(self, 'points', points)
        object.__setattr__(self, 'dist', matrix)
        object.__setattr__(self, '_index', index)
        object.__setattr__(self, 'parts', _check_parts(parts or {}, index))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteSpace is immutable")

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return (self.points == other.points and self.parts == other.parts
                and bool(np.all(self.dist == other.dist)))

    __hash__ = None

    def __repr__(self):
        return f"FiniteSpace(points={list(self.points)!r}, parts={ {k: list(v) for k, v in self.parts.items()}!r})"

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownPoint(f"Unknown point {label!r}", point=label) from None

    def indices(self, labels):
        return [self.index(label) for label in labels]

    def d(self, x, y):
        return self.dist[self.index(x), self.index(y)]

    def part(self, name):
        try:
            return self.parts[name]
        except KeyError:
            raise UnknownPart(f"Space has no part named {name!r}; known parts: {sorted(self.parts)}",
                              part=name) from None

    @classmethod
    def from_function(cls, points, distance, parts=None):
        """Build a space from a symmetric ``distance(x, y)`` callable."""
        points = tuple(points)
        rows = [[0 if x == y else distance(x, y) for y in points] for x in points]
        return cls(points, rows, parts)


@dataclass(frozen=True)
class SpaceClass:
    level: Level
    violation: tuple = None


@dataclass(frozen=True)
class Ball:
    center: str
    radius: Fraction
    members: tuple

    def __contains__(self, label):
        return label in self.members


@dataclass(frozen=True)
class BallPartition:
    radius: Fraction
    blocks: tuple
    representatives: tuple


def _check_axioms(matrix):
    n = matrix.shape[0]
    diagonal = np.asarray(np.diagonal(matrix) != 0, dtype=bool)
    if diagonal.any():
        i = int(np.flatnonzero(diagonal)[0])
        raise NonzeroDiagonal(f"d({i},{i}) = {matrix[i, i]} must be 0", indices=(i, i))
    negative = np.argwhere(np.asarray(matrix < 0, dtype=bool))
    if len(negative):
        i, j = (int(v) for v in negative[0])
        raise NegativeDistance(f"d({i},{j}) = {matrix[i, j]} is negative", indices=(i, j))
    off_diagonal = ~np.eye(n, dtype=bool)
    zero = np.argwhere(np.asarray(matrix == 0, dtype=bool) & off_diagonal)
    if len(zero):
        i, j = (int(v) for v in zero[0])
        raise ZeroOffDiagonal(f"d({i},{j}) = 0 for distinct points", indices=(i, j))
    asymmetric = np.argwhere(np.asarray(matrix != matrix.T, dtype=bool))
    if len(asymmetric):
        i, j = sorted(int(v) for v in asymmetric[0])
        raise AsymmetricMatrix(f"d({i},{j}) = {matrix[i, j]} but d({j},{i}) = {matrix[j, i]}",
                               indices=(i, j))


def _check_parts(parts, index):
    checked = {}
    owner = {}
    for name, members in parts.items():
        members = tuple(members)
        for label in members:
            if label not in index:
                raise UnknownPoint(f"Part {name!r} names unknown point {label!r}", point=label)
            if label in owner:
                raise PartsOverlap(f"Point {label!r} lies in parts {owner[label]!r} and {name!r}",
                                   point=label)
            owner[label] = name
        checked[str(name)] = members
    return checked


def validate_space(raw):
    """
    Build a FiniteSpace from a parsed space description.

    Args:
        raw (dict): ``{"points": [...], "distances": [[...]], "parts": {...}}``
            with distances given as integer or ``p/q`` strings

    Returns:
        FiniteSpace: a space satisfying every semimetric axiom
    """
    if not isinstance(raw, dict):
        raise ParseError("Space description must be a JSON object")
    points = raw.get('points')
    distances = raw.get('distances')
    if not isinstance(points, list) or not isinstance(distances, list):
        raise DimensionMismatch("Space description needs 'points' and 'distances' lists")
    if any(not isinstance(row, list) for row in distances):
        raise DimensionMismatch("Every row of 'distances' must be a list")
    parts = raw.get('parts') or {}
    if not isinstance(parts, dict) or any(not isinstance(m, list) for m in parts.values()):
        raise ParseError("'parts' must map part names to lists of points")
    rows = [[parse_rational(value) for value in row] for row in distances]
    return FiniteSpace([str(p) for p in points], rows,
                       {name: [str(p) for p in members] for name, members in parts.items()})


def _scaled_matrix(space):
    """Integer matrix proportional to the distances (int64 when safe, else Python ints)."""
    values = distance_set(space)
    scale = common_denominator(values)
    top = max(values) * scale
    scaled = [[int(v * scale) for v in row] for row in space.dist]
    return np.array(scaled, dtype=np.int64 if top < _INT64_SAFE else object)


def _rank_matrix(space):
    """Order-preserving integer encoding of the distances."""
    rank = {value: i for i, value in enumerate(distance_set(space))}
    return np.array([[rank[v] for v in row] for row in space.dist], dtype=np.int64)


def _first_violation(matrix, combine):
    """First triple (x, y, z), lexicographically, with d(x,y) > combine(d(x,z), d(z,y))."""
    n = matrix.shape[0]
    transposed = matrix.T
    for start in range(0, n, _SCAN_CHUNK):
        rows = matrix[start:start + _SCAN_CHUNK]
        # bound[x, y, z] = combine(d(x, z), d(z, y))
        bound = combine(rows[:, None, :], transposed[None, :, :])
        hits = np.argwhere(np.asarray(rows[:, :, None] > bound, dtype=bool))
        if len(hits):
            x, y, z = (int(v) for v in hits[0])
            return start + x, y, z
    return None


def classify(space):
    """
    Classify a space as Semimetric, Metric or Ultrametric.

    The violation witness is the lexicographically first triple of point
    labels that breaks the inequality of the next class up.
    """
    triangle = _first_violation(_scaled_matrix(space), np.add)
    if triangle is not None:
        return SpaceClass(Level.SEMIMETRIC, tuple(space.points[i] for i in triangle))
    strong = _first_violation(_rank_matrix(space), np.maximum)
    if strong is not None:
        return SpaceClass(Level.METRIC, tuple(space.points[i] for i in strong))
    return SpaceClass(Level.ULTRAMETRIC)


def is_ultrametric(space):
    """Exact strong triangle inequality check; only value order matters."""
    return _first_violation(_rank_matrix(space), np.maximum) is None


def distance_set(space):
    return sorted(set(space.dist.flat))


def _nonempty_indices(space, labels, role='set'):
    labels = list(labels)
    if not labels:
        raise EmptySet(f"The {role} must be nonempty")
    return space.indices(labels)


def set_distance(space, a_set, b_set):
    """dist(A, B): the least distance over A x B (attained on a finite carrier)."""
    if isinstance(a_set, str):
        a_set = [a_set]
    if isinstance(b_set, str):
        b_set = [b_set]
    ia = _nonempty_indices(space, a_set, 'first set')
    ib = _nonempty_indices(space, b_set, 'second set')
    return space.dist[np.ix_(ia, ib)].min()


def diameter(space, subset):
    idx = _nonempty_indices(space, subset)
    return space.dist[np.ix_(idx, idx)].max()


def closed_ball(space, center, radius):
    radius = Fraction(radius)
    if radius < 0:
        raise NegativeDistance(f"Ball radius {radius} is negative")
    row = space.dist[space.index(center)]
    members = tuple(p for p, value in zip(space.points, row) if value <= radius)
    return Ball(center, radius, members)


def ball_partition(space, radius):
    """
    Partition an ultrametric space into disjoint closed balls of one radius.

    Blocks are the classes of x ~ y iff d(x, y) <= radius; each block is
    reported as the closed ball around its least-index point.
    """
    radius = Fraction(radius)
    verdict = classify(space)
    if verdict.level is not Level.ULTRAMETRIC:
        raise NotUltrametric(f"Ball partitions need an ultrametric space; strong triangle fails at "
                             f"{verdict.violation}", violation=verdict.violation)
    if radius < 0:
        raise NegativeDistance(f"Ball radius {radius} is negative")
    within = csr_matrix(np.asarray(space.dist <= radius, dtype=bool))
    _, labels = connected_components(within, directed=False)
    representatives = []
    seen = set()
    for i, label in enumerate(labels):
        if label not in seen:
            seen.add(label)
            representatives.append(space.points[i])
    blocks = tuple(closed_ball(space, rep, radius) for rep in representatives)
    logger.debug(f"ball_partition r={radius}: {len(blocks)} blocks")
    return BallPartition(radius, blocks, tuple(representatives))


def _off_diagonal_map(space, fn):
    n = len(space)
    return [[Fraction(0) if i == j else fn(space.dist[i, j]) for j in range(n)] for i in range(n)]


def shift(space, c):
    """Add ``c > 0`` to every off-diagonal distance."""
    c = Fraction(c)
    if c <= 0:
        raise NonpositiveShift(f"Shift constant must be positive, got {c}")
    return FiniteSpace(space.points, _off_diagonal_map(space, lambda v: v + c), space.parts)


def reciprocal(space):
    """Replace every off-diagonal distance d by 1/d."""
    return FiniteSpace(space.points, _off_diagonal_map(space, lambda v: 1 / v), space.parts)


def pushforward(space, mapping):
    """Relabel points through a bijection so that the relabeling is an isometry."""
    missing = [p for p in space.points if p not in mapping]
    if missing:
        raise NotBijective(f"Relabeling is not defined on {missing}", points=missing)
    images = [str(mapping[p]) for p in space.points]
    if len(set(images)) != len(images):
        raise NotBijective("Relabeling sends two points to the same label")
    parts = {name: [str(mapping[p]) for p in members] for name, members in space.parts.items()}
    return FiniteSpace(images, space.dist, parts)


def subspace(space, subset):
    """Restrict the distance to ``subset``; parts are intersected with it."""
    idx = sorted(set(_nonempty_indices(space, subset)))
    kept = {space.points[i] for i in idx}
    parts = {}
    for name, members in space.parts.items():
        inside = [p for p in members if p in kept]
        if inside:
            parts[name] = inside
    return FiniteSpace([space.points[i] for i in idx], space.dist[np.ix_(idx, idx)], parts)


def trivial_space(labels, parts=None):
    """Every pair of distinct points at distance 1."""
    return FiniteSpace.from_function(labels, lambda x, y: 1, parts)


def hamming_space(dim, parts=None):
    """All 0/1 words of length ``dim`` with the Hamming distance."""
    words = [''.join(bits) for bits in itertools.product('01', repeat=dim)]
    return FiniteSpace.from_function(
        words, lambda x, y: sum(p != q for p, q in zip(x, y)), parts)
