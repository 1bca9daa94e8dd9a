# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import logging

import numpy as np
import scipy.sparse as sp

from lobstur.data import canonical_edges
from lobstur.data.data_utils import make_rng, weighted_choice
from lobstur.errors import DataError


logger = logging.getLogger(__name__)


class StemPool(object):
    """Multiset of stems (half-edges) with O(1) uniform pop and O(1) removal
    of one copy of a given node.

    Args:
        stems (numpy.ndarray): number of stems of every node
    """

    def __init__(self, stems):
        stems = np.asarray(stems, dtype=np.int64)
        self.items = np.repeat(np.arange(len(stems)), stems).tolist()
        self.where = [set() for _ in range(len(stems))]
        for pos, node in enumerate(self.items):
            self.where[node].add(pos)
        self.remaining = stems.copy()

    def __len__(self):
        return len(self.items)

    def _remove_at(self, pos):
        node = self.items[pos]
        last_pos = len(self.items) - 1
        self.where[node].discard(pos)
        if pos != last_pos:
            last = self.items[last_pos]
            self.items[pos] = last
            self.where[last].discard(last_pos)
            self.where[last].add(pos)
        self.items.pop()
        self.remaining[node] -= 1
        return node

    def pop(self, rng):
        return self._remove_at(int(rng.integers(len(self.items))))

    def remove(self, node):
        self._remove_at(max(self.where[node]))


def rewire_stems(candidates, stems, rng, allow_self=True):
    """Run the stem-matching loop.

    Repeatedly pops a uniform stem ``u`` and draws a partner ``v`` that still
    owns stems with probability proportional to ``candidates[u, v]``, then
    consumes one stem of ``v``. A self pair (``v == u``, only drawn when
    *allow_self*) or a duplicate edge consumes both stems and adds nothing;
    a stem without candidates is dropped.

    Args:
        candidates (scipy.sparse matrix): non-negative candidate weights
        stems (numpy.ndarray): stem count per node
        rng (numpy.random.Generator): the edge stream
        allow_self (bool): keep the diagonal of *candidates* as draw weight

    Returns:
        numpy.ndarray: canonical edge array
    """
    candidates = sp.csr_matrix(candidates, dtype=np.float64)
    candidates.sort_indices()
    n = candidates.shape[0]
    if len(stems) != n:
        raise DataError('{} stem counts for a {}-node candidate matrix'.format(len(stems), n))
    indptr, indices, data = candidates.indptr, candidates.indices, candidates.data

    pool = StemPool(stems)
    edges = set()
    num_discarded, num_self, num_duplicates = 0, 0, 0
    while len(pool) > 0:
        u = pool.pop(rng)
        cols = indices[indptr[u]:indptr[u + 1]]
        weights = data[indptr[u]:indptr[u + 1]]
        mask = (pool.remaining[cols] > 0) & (weights > 0)
        if not allow_self:
            mask &= cols != u
        if not mask.any():
            num_discarded += 1
            continue
        cols, weights = cols[mask], weights[mask]
        v = int(cols[weighted_choice(rng, weights)])
        pool.remove(v)
        if v == u:
            num_self += 1
            continue
        edge = (u, v) if u < v else (v, u)
        if edge in edges:
            num_duplicates += 1
        else:
            edges.add(edge)
    logger.debug('rewiring: %d edges, %d stems without candidates, %d self pairs, %d duplicate pairs',
                 len(edges), num_discarded, num_self, num_duplicates)
    return canonical_edges(np.array(sorted(edges), dtype=np.int64).reshape(-1, 2), n)


def knn_candidates(adjacency, knn):
    """``C[u, v]`` = number of members of ``knn[u]`` adjacent to ``v``."""
    return knn.matrix() @ adjacency


def a2_candidates(adjacency):
    """Two-hop walk counts ``(A^2)[u, v]`` with the diagonal removed."""
    a2 = (adjacency @ adjacency).tolil()
    a2.setdiag(0)
    a2 = a2.tocsr()
    a2.eliminate_zeros()
    return a2


def rewire_edges(g, knn, seed):
    """Resample the edges of *g* from kNN-averaged edge probabilities."""
    if knn.num_nodes != g.num_nodes:
        raise DataError('kNN graph has {} nodes, graph has {}'.format(knn.num_nodes, g.num_nodes))
    return rewire_stems(knn_candidates(g.adjacency(), knn), g.degrees(), make_rng(seed, 'edges'))


def rewire_edges_approx(g, seed):
    """Resample the edges of *g* with partners drawn proportionally to ``A^2``."""
    return rewire_stems(a2_candidates(g.adjacency()), g.degrees(), make_rng(seed, 'edges'), allow_self=False)
