"""
Brute-force realization oracles for small bipartite graphs.

Every symmetric matrix on the carrier A ∪ B whose off-diagonal entries come
from a fixed value set is enumerated, filtered by the metric or the strong
triangle inequality, and reduced to the edge pattern of its proximinal
graph. Patterns are bitmasks with bit ``i * |B| + j`` for the pair
(A[i], B[j]); each pattern keeps the least enumeration code realizing it.
"""

import itertools
import logging
from functools import lru_cache

import numpy as np
from joblib import Parallel, delayed

from .metric_space import FiniteSpace, Level

logger = logging.getLogger(__name__)


def _carrier_pairs(n):
    return list(itertools.combinations(range(n), 2))


def _matrices(n, values, codes):
    pairs = np.array(_carrier_pairs(n)).T
    digits = np.stack(np.unravel_index(codes, (len(values),) * pairs.shape[1]), axis=1)
    entries = np.asarray(values, dtype=np.int64)[digits]
    matrices = np.zeros((len(codes), n, n), dtype=np.int64)
    matrices[:, pairs[0], pairs[1]] = entries
    matrices[:, pairs[1], pairs[0]] = entries
    return matrices


def _satisfies(matrices, level):
    if level is Level.SEMIMETRIC:
        return np.ones(len(matrices), dtype=bool)
    combine = np.add if level is Level.METRIC else np.maximum
    # bound[m, x, y, z] = combine(d(x, z), d(z, y))
    bound = combine(matrices[:, :, None, :], matrices.transpose(0, 2, 1)[:, None, :, :])
    return ~(matrices[:, :, :, None] > bound).any(axis=(1, 2, 3))


def _scan_chunk(n_a, n_b, values, level, start, stop):
    codes = np.arange(start, stop, dtype=np.int64)
    matrices = _matrices(n_a + n_b, values, codes)
    valid = _satisfies(matrices, level)
    cross = matrices[valid][:, :n_a, n_a:]
    if not len(cross):
        return {}
    hits = cross == cross.min(axis=(1, 2))[:, None, None]
    weights = np.left_shift(1, np.arange(n_a * n_b, dtype=np.int64))
    masks = hits.reshape(len(cross), -1).astype(np.int64) @ weights
    unique, first = np.unique(masks, return_index=True)
    kept = codes[valid]
    return {int(mask): int(kept[i]) for mask, i in zip(unique, first)}


@lru_cache(maxsize=64)
def enumerate_proximinal_graphs(n_a, n_b, values=(1, 2), level=Level.ULTRAMETRIC,
                                n_jobs=1, chunk_size=4096):
    """
    Map every realizable edge pattern on |A| = n_a, |B| = n_b to its first witness code.

    Args:
        n_a, n_b (int): part sizes
        values (tuple): allowed positive integer off-diagonal distances
        level (Level): inequality the matrices must satisfy
        n_jobs (int): joblib workers scanning independent chunks
        chunk_size (int): matrices per chunk

    Returns:
        dict: edge bitmask -> least enumeration code realizing it
    """
    values = tuple(values)
    n = n_a + n_b
    total = len(values) ** len(_carrier_pairs(n))
    bounds = [(s, min(s + chunk_size, total)) for s in range(0, total, chunk_size)]
    logger.debug(f"oracle {n_a}x{n_b} values={values} level={level.label}: "
                 f"{total} matrices in {len(bounds)} chunks")
    partial = Parallel(n_jobs=n_jobs)(
        delayed(_scan_chunk)(n_a, n_b, values, level, start, stop) for start, stop in bounds)
    merged = {}
    for chunk in partial:
        for mask, code in chunk.items():
            # chunks arrive in enumeration order, so the first code seen is the least
            merged.setdefault(mask, code)
    return merged


def edge_mask(g):
    index_a = {v: i for i, v in enumerate(g.part_a)}
    index_b = {v: j for j, v in enumerate(g.part_b)}
    return sum(1 << (index_a[a] * len(g.part_b) + index_b[b]) for a, b in g.edges)


def witness_space(g, code, values):
    """The enumerated space with code ``code``, labeled by the vertices of g."""
    matrix = _matrices(len(g.vertices), tuple(values), np.array([code]))[0]
    return FiniteSpace(g.vertices, matrix.tolist(), {'A': g.part_a, 'B': g.part_b})


def oracle_witness(g, values=(1, 2), level=Level.ULTRAMETRIC, n_jobs=1, chunk_size=4096):
    """A space on A ∪ B realizing g over ``values`` at ``level``, or None."""
    patterns = enumerate_proximinal_graphs(len(g.part_a), len(g.part_b), tuple(values), level,
                                           n_jobs, chunk_size)
    code = patterns.get(edge_mask(g))
    return None if code is None else witness_space(g, code, values)
