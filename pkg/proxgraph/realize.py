"""
Realization Module - which bipartite graphs are proximinal or farthest graphs,
with witness spaces built from explicit constructions.

Finite witnesses live on the carrier A ∪ B and use the distance values
{1, 2} only. Empty graphs with infinite parts are witnessed by one of two
symbolic countable families.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .bigraph import cbd_decompose, components, core, is_complete_bipartite, verify_isomorphism
from .errors import EmptyGraph, InvalidIndex, NotBijective, NotCompletelyDecomposable, WrongFamilyKind
from .metric_space import FiniteSpace, Level, pushforward, trivial_space
from .oracle import oracle_witness

logger = logging.getLogger(__name__)


class Target(Enum):
    PROXIMINAL_METRIC = 'metric'
    PROXIMINAL_ULTRAMETRIC = 'ultrametric'
    FARTHEST = 'farthest'


class DecisionLevel(Enum):
    EXACT_PARTS = 'exact'
    UP_TO_ISOMORPHISM = 'iso'


class Reason(Enum):
    NONEMPTY = 'nonempty graph'
    ALL_COMPONENTS_COMPLETE = 'every core component complete bipartite'
    INCOMPLETE_COMPONENT = 'core component not complete bipartite'
    FINITE_EMPTY = 'finite empty graph'
    EMPTY_FINITE_PART = 'empty graph with a finite part'
    EMPTY_BOTH_INFINITE = 'empty graph with both parts infinite'
    EMPTY_SOME_INFINITE = 'empty graph with an infinite part'
    INFINITE_VERTEX_SET = 'empty graph on an infinite vertex set'


class FamilyKind(Enum):
    EMPTY_PROXIMINAL = 'EmptyProximinal'
    EMPTY_FARTHEST = 'EmptyFarthest'


@dataclass(frozen=True)
class TaggedPoint:
    """
    The ``index``-th point (1-based) of part 'A' or 'B' of a countable family.

    ``layer`` numbers the extra points sharing one index rule value; only the
    EmptyProximinal family has them.
    """

    part: str
    index: int
    layer: int = 0

    @property
    def label(self):
        return f"{self.part}{self.index}" + (f".{self.layer}" if self.layer else "")


@dataclass(frozen=True)
class Approximation:
    witness: TaggedPoint
    value: Fraction


@dataclass(frozen=True)
class CountableFamily:
    """Symbolic countable space witnessing an empty graph with infinite parts."""

    kind: FamilyKind

    @property
    def dist_rule(self):
        if self.kind is FamilyKind.EMPTY_PROXIMINAL:
            return "0 if x = y; 1 if x != y and phi(x) = phi(y); max(1 + 1/phi(x), 1 + 1/phi(y)) otherwise"
        return "0 if x = y; 1 + i/(i+1) if x in A and y in B_i; 1 otherwise"

    @property
    def extremum(self):
        return Fraction(1) if self.kind is FamilyKind.EMPTY_PROXIMINAL else Fraction(2)

    @property
    def attained(self):
        return False

    def phi(self, point):
        """Index rule: A -> 2, 4, 6, ...; B -> 1, 3, 5, ... (EmptyProximinal), block number of B points otherwise."""
        _check_point(self, point)
        if self.kind is FamilyKind.EMPTY_PROXIMINAL:
            return 2 * point.index if point.part == 'A' else 2 * point.index - 1
        return point.index if point.part == 'B' else None

    def truncate(self, count, layers=1):
        """The finite subspace on the first ``count`` points of each part."""
        if self.kind is FamilyKind.EMPTY_FARTHEST:
            layers = 1
        points = [TaggedPoint(part, i, layer)
                  for part in ('A', 'B') for i in range(1, count + 1) for layer in range(layers)]
        by_label = {p.label: p for p in points}
        parts = {part: [p.label for p in points if p.part == part] for part in ('A', 'B')}
        return FiniteSpace.from_function(
            list(by_label), lambda x, y: family_distance(self, by_label[x], by_label[y]), parts)

    def to_dict(self):
        return {'kind': self.kind.value, 'params': {}}


@dataclass(frozen=True)
class Decision:
    target: Target
    level: DecisionLevel
    realizable: bool
    reason: Reason
    witness: object = None


@dataclass(frozen=True)
class MinDistanceSet:
    size: int
    witness: FiniteSpace


def _carrier_parts(g):
    return {'A': g.part_a, 'B': g.part_b}


def _require_nonempty(g):
    if g.is_empty:
        raise EmptyGraph("Finite witnesses exist only for nonempty graphs")


def realize_metric(g):
    """d = 1 on edges, 2 on every other pair of distinct vertices."""
    _require_nonempty(g)
    return FiniteSpace.from_function(
        g.vertices, lambda x, y: 1 if g.has_edge(x, y) else 2, _carrier_parts(g))


def realize_farthest(g):
    """d = 2 on edges, 1 on every other pair of distinct vertices."""
    _require_nonempty(g)
    return FiniteSpace.from_function(
        g.vertices, lambda x, y: 2 if g.has_edge(x, y) else 1, _carrier_parts(g))


def realize_ultrametric(g):
    """
    d = 1 inside one component of G', 2 otherwise.

    Raises:
        NotCompletelyDecomposable: if some component of G' is not complete bipartite
    """
    _require_nonempty(g)
    decomposition = cbd_decompose(g)
    if not decomposition.all_complete:
        bad = decomposition.first_incomplete()
        raise NotCompletelyDecomposable(
            f"Component {list(bad.a_side) + list(bad.b_side)} of G' is not complete bipartite",
            component=bad)
    block = {v: i for i, comp in enumerate(components(core(g))) for v in comp}

    def distance(x, y):
        # isolated vertices have no block and sit at distance 2 from everything
        return 1 if x in block and block.get(y) == block[x] else 2

    return FiniteSpace.from_function(g.vertices, distance, _carrier_parts(g))


def _finite_witness(g, target):
    if is_complete_bipartite(g):
        return trivial_space(g.vertices, _carrier_parts(g))
    if target is Target.PROXIMINAL_METRIC:
        return realize_metric(g)
    if target is Target.PROXIMINAL_ULTRAMETRIC:
        return realize_ultrametric(g)
    return realize_farthest(g)


def decide(g, target, level=DecisionLevel.EXACT_PARTS):
    """
    Decide whether g is (isomorphic to) a proximinal or farthest graph.

    Args:
        g (BipartiteGraph): the graph, with its infinite-part annotations
        target (Target): proximinal over metric / ultrametric spaces, or farthest
        level (DecisionLevel): fixed parts or up to isomorphism

    Returns:
        Decision: verdict, governing reason and a witness when realizable
    """
    target, level = Target(target), DecisionLevel(level)

    def verdict(realizable, reason, witness=None):
        logger.debug(f"decide {target.value}/{level.value}: {realizable} ({reason.value})")
        return Decision(target, level, realizable, reason, witness)

    if not g.is_empty:
        if target is Target.PROXIMINAL_ULTRAMETRIC:
            if not cbd_decompose(g).all_complete:
                return verdict(False, Reason.INCOMPLETE_COMPONENT)
            return verdict(True, Reason.ALL_COMPONENTS_COMPLETE, _finite_witness(g, target))
        return verdict(True, Reason.NONEMPTY, _finite_witness(g, target))

    if g.is_finite:
        return verdict(False, Reason.FINITE_EMPTY)
    if target is Target.FARTHEST:
        return verdict(True, Reason.EMPTY_SOME_INFINITE, countable_family(FamilyKind.EMPTY_FARTHEST))
    if level is DecisionLevel.UP_TO_ISOMORPHISM:
        # an infinite vertex set can be split into two infinite parts
        return verdict(True, Reason.INFINITE_VERTEX_SET, countable_family(FamilyKind.EMPTY_PROXIMINAL))
    if g.a_infinite and g.b_infinite:
        return verdict(True, Reason.EMPTY_BOTH_INFINITE, countable_family(FamilyKind.EMPTY_PROXIMINAL))
    return verdict(False, Reason.EMPTY_FINITE_PART)


def min_distance_set_size(g, n_jobs=1):
    """
    Least size of the distance set of a metric on A ∪ B with proximinal graph g.

    Size 2 (one nonzero value) is searched exhaustively; otherwise the
    {0, 1, 2}-valued witness of realize_metric shows 3 suffices.
    """
    _require_nonempty(g)
    if oracle_witness(g, values=(1,), level=Level.METRIC, n_jobs=n_jobs) is not None:
        return MinDistanceSet(2, trivial_space(g.vertices, _carrier_parts(g)))
    return MinDistanceSet(3, realize_metric(g))


def transfer_witness(g, h, mapping):
    """
    Metric on V(h) that makes ``mapping`` an isometry from realize_metric(g).

    The proximinal graph of the result with parts mapping(A), mapping(B)
    is the image of g, which is h.
    """
    if not verify_isomorphism(mapping, g, h):
        raise NotBijective("Vertex map is not an isomorphism of the two graphs")
    return pushforward(realize_metric(g), mapping)


def countable_family(kind):
    return CountableFamily(FamilyKind(kind))


def _check_point(family, point):
    if not isinstance(point, TaggedPoint) or point.part not in ('A', 'B'):
        raise InvalidIndex(f"Not a tagged point: {point!r}")
    if not isinstance(point.index, int) or point.index < 1:
        raise InvalidIndex(f"Point index must be a positive integer, got {point.index!r}")
    if not isinstance(point.layer, int) or point.layer < 0:
        raise InvalidIndex(f"Point layer must be a nonnegative integer, got {point.layer!r}")
    if family.kind is FamilyKind.EMPTY_FARTHEST and point.layer:
        raise InvalidIndex("The EmptyFarthest family has one point per index")


def family_distance(family, p, q):
    """Exact distance between two tagged points of a countable family."""
    _check_point(family, p)
    _check_point(family, q)
    if p == q:
        return Fraction(0)
    if family.kind is FamilyKind.EMPTY_PROXIMINAL:
        phi_p, phi_q = family.phi(p), family.phi(q)
        if phi_p == phi_q:
            return Fraction(1)
        return 1 + Fraction(1, min(phi_p, phi_q))
    if p.part != q.part:
        i = p.index if p.part == 'B' else q.index
        return 1 + Fraction(i, i + 1)
    return Fraction(1)


def family_best_approximation(family, x, side):
    """
    Best approximation to ``x`` in part ``side`` of the EmptyProximinal family.

    For x in the other part the witness is the first point of ``side`` whose
    index rule value exceeds phi(x); its distance 1 + 1/phi(x) is the infimum.
    """
    if family.kind is not FamilyKind.EMPTY_PROXIMINAL:
        raise WrongFamilyKind("Only the EmptyProximinal family has proximinal parts")
    _check_point(family, x)
    if side not in ('A', 'B'):
        raise InvalidIndex(f"Unknown side {side!r}")
    if x.part == side:
        return Approximation(x, Fraction(0))
    phi = family.phi(x)
    # next even value above an odd phi is phi + 1 -> A index (phi + 1) / 2;
    # next odd value above an even phi is phi + 1 -> B index phi / 2 + 1
    index = (phi + 1) // 2 if side == 'A' else phi // 2 + 1
    return Approximation(TaggedPoint(side, index), 1 + Fraction(1, phi))
