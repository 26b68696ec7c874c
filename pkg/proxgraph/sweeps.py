"""
Invariant Sweeps Module - seeded, reproducible property suites over
exhaustive graph populations and random finite spaces.
"""

import itertools
import logging
import os
from datetime import datetime
from fractions import Fraction

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from scipy.cluster.hierarchy import cophenet, linkage
from scipy.spatial.distance import squareform
from tqdm import tqdm

from .bigraph import (
    BipartiteGraph, cbd_decompose, find_isomorphism, is_complete_bipartite, validate_graph,
)
from .dynamics import orbit_check, random_cyclic_nonexpansive, verify_self_homomorphism
from .errors import ProxGraphError
from .metric_space import (
    FiniteSpace, Level, ball_partition, classify, closed_ball, distance_set, hamming_space,
    is_ultrametric, reciprocal, set_distance, subspace,
)
from .oracle import oracle_witness
from .proximity import farthest_graph, proximinal_graph, ultrametric_structure
from .realize import (
    DecisionLevel, FamilyKind, Target, TaggedPoint, countable_family, decide,
    family_best_approximation, family_distance, min_distance_set_size, realize_farthest,
    realize_metric, realize_ultrametric,
)
from .utils import create_directories

SUITES = (
    'hamming', 'metric_round_trip', 'ultrametric_oracle', 'distance_set',
    'ultrametric_structure', 'ball_laws', 'families', 'dynamics', 'duality', 'restriction',
)

DEFAULT_SUITE_CONFIG = {
    'ultrametric_structure': {'instances': 10000, 'max_points': 8, 'values': [1, 2, 3, 4]},
    'ball_laws': {'instances': 10000, 'max_points': 8, 'values': [1, 2, 3, 4]},
    'dynamics': {'instances': 1000, 'max_points': 6, 'values': [1, 2, 3], 'orbit_steps': 20,
                 'attempts': 200},
    'duality': {'instances': 1000, 'max_points': 8, 'max_numerator': 9, 'max_denominator': 4},
    'restriction': {'instances': 1000, 'max_points': 8, 'max_numerator': 9, 'max_denominator': 4},
    'families': {'proximinal_count': 100, 'farthest_count': 500},
}

HAMMING_PARTS = {
    'A': ['100', '010', '001', '111'],
    'B': ['110', '101', '011', '000'],
}


def all_bipartite_graphs(max_part_size):
    """Every bipartite graph on parts a1..ap, b1..bq with 1 <= p, q <= max_part_size."""
    for p in range(1, max_part_size + 1):
        for q in range(1, max_part_size + 1):
            part_a = tuple(f"a{i}" for i in range(1, p + 1))
            part_b = tuple(f"b{j}" for j in range(1, q + 1))
            cross = list(itertools.product(part_a, part_b))
            for mask in range(1 << len(cross)):
                edges = frozenset(e for k, e in enumerate(cross) if mask >> k & 1)
                yield BipartiteGraph(part_a, part_b, edges)


def cube_graph():
    """The 3-cube on the worked-example labels, as a bipartite graph."""
    edges = [(a, b) for a in HAMMING_PARTS['A'] for b in HAMMING_PARTS['B']
             if sum(x != y for x, y in zip(a, b)) == 1]
    return BipartiteGraph(HAMMING_PARTS['A'], HAMMING_PARTS['B'], frozenset(edges))


def random_ultrametric(rng, n, values):
    """
    Random ultrametric on p1..pn with distances drawn from ``values``.

    Single linkage turns random dissimilarities into their subdominant
    ultrametric; its cophenetic distances reuse the drawn values.
    """
    labels = [f"p{i}" for i in range(1, n + 1)]
    if n == 1:
        return FiniteSpace(labels, [[0]])
    base = rng.choice(np.asarray(values, dtype=float), size=n * (n - 1) // 2)
    merged = cophenet(linkage(base, method='single'))
    matrix = np.rint(squareform(merged)).astype(int)
    return FiniteSpace(labels, matrix.tolist())


def random_semimetric(rng, n, max_numerator, max_denominator):
    labels = [f"p{i}" for i in range(1, n + 1)]
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        value = Fraction(int(rng.integers(1, max_numerator + 1)), int(rng.integers(1, max_denominator + 1)))
        rows[i][j] = rows[j][i] = value
    return FiniteSpace(labels, rows)


def random_parts(rng, points):
    """Two disjoint nonempty parts drawn from ``points`` (needs at least two points)."""
    order = [points[i] for i in rng.permutation(len(points))]
    size_a = int(rng.integers(1, len(order)))
    size_b = int(rng.integers(1, len(order) - size_a + 1))
    return order[:size_a], order[size_a:size_a + size_b]


def _row(instance, passed, detail=''):
    return {'instance': instance, 'passed': bool(passed), 'detail': detail}


def _check_structure(instance, seed, params):
    rng = np.random.default_rng(seed)
    space = random_ultrametric(rng, int(rng.integers(2, params['max_points'] + 1)), params['values'])
    a_set, b_set = random_parts(rng, list(space.points))
    s = ultrametric_structure(space, a_set, b_set)
    bound_b = s.diam_b <= s.dist
    bound_union = s.diam_union <= s.dist
    failures = []
    if bound_b != (s.b0_equals_b and s.all_pairs_best):
        failures.append('diam(B) <= dist(A,B) vs B0 = B and A0 x B0 best')
    if bound_b != (s.graph_nonempty and s.core_complete_bipartite and s.b_in_core):
        failures.append("diam(B) <= dist(A,B) vs complete G' containing B")
    if not (s.graph_connected == bound_union == s.graph_complete_bipartite):
        failures.append('connected vs diam(A u B) <= dist vs complete bipartite')
    return _row(instance, not failures, '; '.join(failures))


def _check_balls(instance, seed, params):
    rng = np.random.default_rng(seed)
    space = random_ultrametric(rng, int(rng.integers(1, params['max_points'] + 1)), params['values'])
    radii = distance_set(space)
    failures = []
    for r in radii:
        partition = ball_partition(space, r)
        members = [m for block in partition.blocks for m in block.members]
        if sorted(members) != sorted(space.points):
            failures.append(f"r={r}: blocks do not partition the space")
        for block in partition.blocks:
            for a in block.members:
                if closed_ball(space, a, r).members != block.members:
                    failures.append(f"r={r}: recentering at {a} changes the ball")
    balls = [(r, set(closed_ball(space, c, r).members), c) for r in radii for c in space.points]
    for (r1, small, c1), (r2, large, c2) in itertools.product(balls, repeat=2):
        if r1 <= r2 and small & large and not small <= large:
            failures.append(f"balls ({c1},{r1}) and ({c2},{r2}) intersect without nesting")
    return _row(instance, not failures, '; '.join(failures[:3]))


def _check_dynamics(instance, seed, params):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, params['max_points'] + 1))
    labels = [f"p{i}" for i in range(1, n + 1)]
    rows = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        rows[i][j] = rows[j][i] = int(rng.choice(params['values']))
    space = FiniteSpace(labels, rows)
    a_set, b_set = random_parts(rng, labels)
    cyclic_map, _ = random_cyclic_nonexpansive(space, a_set, b_set, rng, params['attempts'])
    verdict = verify_self_homomorphism(cyclic_map, space, a_set, b_set)
    failures = [] if verdict.holds else [f"broken edges {verdict.broken_edges}"]
    target = set_distance(space, a_set, b_set)
    for a0, b0 in proximinal_graph(space, a_set, b_set).sorted_edges():
        orbit = orbit_check(cyclic_map, space, a0, b0, params['orbit_steps'])
        if any(value != target for value in orbit):
            failures.append(f"orbit of ({a0}, {b0}) leaves dist(A,B)")
    return _row(instance, not failures, '; '.join(failures))


def _check_duality(instance, seed, params):
    rng = np.random.default_rng(seed)
    space = random_semimetric(rng, int(rng.integers(2, params['max_points'] + 1)),
                              params['max_numerator'], params['max_denominator'])
    a_set, b_set = random_parts(rng, list(space.points))
    passed = farthest_graph(space, a_set, b_set) == proximinal_graph(reciprocal(space), a_set, b_set)
    return _row(instance, passed, '' if passed else 'farthest graph differs from reciprocal proximinal graph')


def _check_restriction(instance, seed, params):
    rng = np.random.default_rng(seed)
    space = random_semimetric(rng, int(rng.integers(2, params['max_points'] + 1)),
                              params['max_numerator'], params['max_denominator'])
    a_set, b_set = random_parts(rng, list(space.points))
    extra = [p for p in space.points if p not in a_set and p not in b_set and rng.random() < 0.5]
    restricted = subspace(space, a_set + b_set + extra)
    passed = proximinal_graph(space, a_set, b_set) == proximinal_graph(restricted, a_set, b_set)
    return _row(instance, passed, '' if passed else 'restriction changes the proximinal graph')


class SweepRunner:
    """Run named invariant suites and summarize pass/fail counts."""

    def __init__(self, config, logger=None):
        self.config = config
        self.logger = logger or logging.getLogger(__name__)
        sweep = config.get('sweep', {})
        self.n_jobs = sweep.get('n_jobs', 1)
        self.default_seed = sweep.get('seed', 0)
        self.default_max_part_size = sweep.get('max_part_size', 3)
        self.write_csv = sweep.get('write_csv', False)
        self.progress = sweep.get('progress', False)
        self.oracle_jobs = config.get('oracle', {}).get('n_jobs', 1)
        self.max_vertices = config.get('isomorphism', {}).get('max_vertices', 12)
        self.output_dir = os.path.join(config['paths']['output_dir'], 'sweeps')
        self.suite_config = self._load_suite_config()

    def _load_suite_config(self):
        suites = {name: dict(params) for name, params in DEFAULT_SUITE_CONFIG.items()}
        for name, params in (self.config.get('suites') or {}).items():
            suites.setdefault(name, {}).update(params or {})
        return suites

    def _progress(self, iterable, total, suite):
        return tqdm(iterable, total=total, desc=suite, disable=not self.progress)

    def _random_suite(self, suite, check, seed, instances):
        params = self.suite_config[suite]
        count = instances if instances is not None else params['instances']
        children = np.random.SeedSequence(seed).spawn(count)
        jobs = (delayed(check)(i, child, params) for i, child in enumerate(children))
        return Parallel(n_jobs=self.n_jobs)(self._progress(jobs, count, suite))

    def _graph_suite(self, suite, check, max_part_size):
        graphs = list(all_bipartite_graphs(max_part_size))
        return [check(i, g) for i, g in enumerate(self._progress(graphs, len(graphs), suite))]

    def _check_hamming(self):
        space = hamming_space(3, HAMMING_PARTS)
        graph = proximinal_graph(space, HAMMING_PARTS['A'], HAMMING_PARTS['B'])
        failures = []
        if len(graph.edges) != 12 or any(graph.degree(v) != 3 for v in graph.vertices):
            failures.append('graph is not 3-regular with 12 edges')
        if set_distance(space, HAMMING_PARTS['A'], HAMMING_PARTS['B']) != 1:
            failures.append('dist(A,B) != 1')
        if find_isomorphism(graph, cube_graph(), self.max_vertices) is None:
            failures.append('no isomorphism onto the cube graph')
        return [_row(0, not failures, '; '.join(failures))]

    @staticmethod
    def _check_round_trip(i, g):
        if g.is_empty:
            verdict = decide(g, Target.PROXIMINAL_METRIC, DecisionLevel.EXACT_PARTS)
            return _row(i, not verdict.realizable, 'finite empty graph declared realizable' if verdict.realizable else '')
        failures = []
        witness = realize_metric(g)
        if proximinal_graph(witness, g.part_a, g.part_b) != g:
            failures.append('metric round trip')
        if len(distance_set(witness)) > 3:
            failures.append('metric witness uses more than three distances')
        if farthest_graph(realize_farthest(g), g.part_a, g.part_b) != g:
            failures.append('farthest round trip')
        if cbd_decompose(g).all_complete:
            ultra = realize_ultrametric(g)
            if classify(ultra).level is not Level.ULTRAMETRIC or proximinal_graph(ultra, g.part_a, g.part_b) != g:
                failures.append('ultrametric round trip')
        return _row(i, not failures, '; '.join(failures))

    def _check_oracle(self, i, g):
        verdict = decide(g, Target.PROXIMINAL_ULTRAMETRIC, DecisionLevel.EXACT_PARTS)
        witness = oracle_witness(g, (1, 2), Level.ULTRAMETRIC, n_jobs=self.oracle_jobs)
        agree = verdict.realizable == (witness is not None)
        return _row(i, agree, '' if agree else f"decide={verdict.realizable}, oracle={witness is not None}")

    def _check_distance_set(self, i, g):
        if g.is_empty:
            return _row(i, True)
        result = min_distance_set_size(g, n_jobs=self.oracle_jobs)
        expected = 2 if is_complete_bipartite(g) else 3
        failures = []
        if result.size != expected:
            failures.append(f"size {result.size}, expected {expected}")
        if proximinal_graph(result.witness, g.part_a, g.part_b) != g:
            failures.append('witness does not realize the graph')
        if len(distance_set(result.witness)) != result.size:
            failures.append('witness distance set has the wrong size')
        return _row(i, not failures, '; '.join(failures))

    @staticmethod
    def _check_decisions(i, g):
        failures = []
        variants = [g] if not g.is_empty else [
            validate_graph({'A': list(g.part_a), 'B': list(g.part_b), 'edges': [],
                            'infinite': {'A': fa, 'B': fb}})
            for fa, fb in itertools.product((False, True), repeat=2)]
        for variant in variants:
            for level in DecisionLevel:
                metric = decide(variant, Target.PROXIMINAL_METRIC, level).realizable
                farthest = decide(variant, Target.FARTHEST, level).realizable
                if metric and not farthest:
                    failures.append(f"{level.value}: proximinal but not farthest")
                if level is DecisionLevel.UP_TO_ISOMORPHISM and metric != farthest:
                    failures.append('up to isomorphism the two decisions differ')
        return _row(i, not failures, '; '.join(failures))

    def _check_families(self):
        params = self.suite_config['families']
        rows = []
        prox = countable_family(FamilyKind.EMPTY_PROXIMINAL)
        count = params['proximinal_count']
        truncated = prox.truncate(count + 1)
        ultra = is_ultrametric(truncated)
        rows.append(_row(0, ultra, '' if ultra else 'strong triangle inequality fails on the truncation'))
        cross = min(family_distance(prox, TaggedPoint('A', i), TaggedPoint('B', j))
                    for i in range(1, count + 2) for j in range(1, count + 2))
        unattained = cross > prox.extremum and not prox.attained
        rows.append(_row(1, unattained, '' if unattained else 'cross distance 1 attained'))
        failures = []
        for part, side in (('A', 'B'), ('B', 'A')):
            for k in range(1, count + 1):
                x = TaggedPoint(part, k)
                approx = family_best_approximation(prox, x, side)
                best = min(truncated.d(x.label, y) for y in truncated.part(side))
                if approx.value != best or family_distance(prox, x, approx.witness) != best:
                    failures.append(x.label)
        rows.append(_row(2, not failures, f"best approximation fails at {failures[:5]}" if failures else ''))
        far = countable_family(FamilyKind.EMPTY_FARTHEST)
        values = [family_distance(far, TaggedPoint('A', 1), TaggedPoint('B', i))
                  for i in range(1, params['farthest_count'] + 1)]
        in_range = all(Fraction(3, 2) <= v < far.extremum for v in values)
        rows.append(_row(3, in_range and far.extremum == 2 and not far.attained,
                         '' if in_range else 'farthest family cross distance outside [3/2, 2)'))
        return rows

    def run(self, suite, max_part_size=None, seed=None, instances=None):
        """
        Run one suite.

        Args:
            suite (str): one of SUITES
            max_part_size (int): part-size bound for exhaustive graph suites
            seed (int): root seed for random suites
            instances (int): override the configured population size

        Returns:
            dict: suite name, seed, instance / pass / fail counts and sample failures
        """
        if suite not in SUITES:
            raise ProxGraphError(f"Unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        max_part_size = max_part_size or self.default_max_part_size
        seed = self.default_seed if seed is None else seed
        start = datetime.now()
        self.logger.info(f"Starting sweep {suite} (seed={seed}, max_part_size={max_part_size})")

        if suite == 'hamming':
            rows = self._check_hamming()
        elif suite == 'metric_round_trip':
            rows = self._graph_suite(suite, self._check_round_trip, max_part_size)
        elif suite == 'ultrametric_oracle':
            rows = self._graph_suite(suite, self._check_oracle, max_part_size)
        elif suite == 'distance_set':
            rows = self._graph_suite(suite, self._check_distance_set, max_part_size)
        elif suite == 'ultrametric_structure':
            rows = self._random_suite(suite, _check_structure, seed, instances)
        elif suite == 'ball_laws':
            rows = self._random_suite(suite, _check_balls, seed, instances)
        elif suite == 'families':
            rows = self._check_families()
        elif suite == 'dynamics':
            rows = self._random_suite(suite, _check_dynamics, seed, instances)
        elif suite == 'duality':
            rows = self._random_suite(suite, _check_duality, seed, instances)
            offset = len(rows)
            rows += [dict(row, instance=offset + row['instance'])
                     for row in self._graph_suite(suite, self._check_decisions, max_part_size)]
        else:
            rows = self._random_suite(suite, _check_restriction, seed, instances)

        results = pd.DataFrame(rows, columns=['instance', 'passed', 'detail'])
        failed = results[~results['passed']]
        summary = {
            'suite': suite,
            'seed': seed,
            'max_part_size': max_part_size,
            'instances': int(len(results)),
            'passed': int(results['passed'].sum()),
            'failed': int(len(failed)),
            'failures': failed.head(10).to_dict('records'),
        }
        if self.write_csv:
            create_directories([self.output_dir])
            results.to_csv(os.path.join(self.output_dir, f"{suite}.csv"), index=False)
        level = logging.ERROR if summary['failed'] else logging.INFO
        self.logger.log(level, f"Sweep {suite}: {summary['passed']}/{summary['instances']} passed "
                               f"in {datetime.now() - start}")
        return summary
