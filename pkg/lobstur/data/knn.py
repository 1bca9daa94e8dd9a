# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import logging

import numpy as np
import scipy.sparse as sp
from scipy.spatial.distance import cdist

from lobstur.errors import DataError
from .graph import KnnGraph


logger = logging.getLogger(__name__)

# rows of the distance matrix computed at once by feature_knn
_BLOCK_ROWS = 1024


def _check_k(k):
    if int(k) != k or k < 1:
        raise DataError('k must be a positive integer, got {}'.format(k))
    return int(k)


def shortest_path_knn(g, k):
    """kNN lists by unweighted hop distance.

    A breadth-first search from every node collects whole distance levels,
    each level sorted by node id, until *k* nodes are found. Unreachable
    nodes never appear, so lists in small components are shorter than *k*.
    """
    k = _check_k(k)
    if g.num_nodes < 2:
        raise DataError('shortest_path_knn needs at least 2 nodes')
    adj = g.adjacency()
    indptr, indices = adj.indptr, adj.indices
    lists = []
    for source in range(g.num_nodes):
        found = []
        visited = {source}
        frontier = [source]
        while frontier and len(found) < k:
            level = set()
            for u in frontier:
                for v in indices[indptr[u]:indptr[u + 1]].tolist():
                    if v not in visited:
                        level.add(v)
            visited.update(level)
            frontier = sorted(level)
            found.extend(frontier[:k - len(found)])
        lists.append(found)
    return KnnGraph(k, lists, 'graph-shortest-path')


def _rank_by_similarity(sim, k, source):
    """kNN lists from a sparse similarity matrix: larger first, ties by id.

    Entries with zero similarity (absent from the sparse structure) and the
    diagonal are never listed.
    """
    sim = sp.csr_matrix(sim)
    sim.sort_indices()
    lists = []
    for i in range(sim.shape[0]):
        cols = sim.indices[sim.indptr[i]:sim.indptr[i + 1]]
        vals = sim.data[sim.indptr[i]:sim.indptr[i + 1]]
        keep = (cols != i) & (vals > 0)
        cols, vals = cols[keep], vals[keep]
        order = np.lexsort((cols, -vals))
        lists.append(cols[order[:k]])
    return KnnGraph(k, lists, source)


def jaccard_knn(g, k):
    """kNN lists by Jaccard similarity of closed neighborhoods.

    Closed neighborhoods contain the node itself, so two adjacent nodes always
    share at least two members. Nodes with similarity 0 are excluded.
    """
    k = _check_k(k)
    n = g.num_nodes
    closed = (g.adjacency() + sp.identity(n, dtype=np.int64, format='csr')).tocsr()
    overlap = (closed @ closed).tocoo()
    sizes = g.degrees() + 1
    union = sizes[overlap.row] + sizes[overlap.col] - overlap.data
    sim = sp.csr_matrix((overlap.data / union, (overlap.row, overlap.col)), shape=(n, n))
    return _rank_by_similarity(sim, k, 'graph-jaccard')


def shared_neighbors_knn(g, k):
    """kNN lists by the number of shared (open) neighbors."""
    k = _check_k(k)
    adj = g.adjacency()
    overlap = (adj @ adj).astype(np.float64)
    return _rank_by_similarity(overlap, k, 'graph-shared-neighbors')


def feature_knn(X, k, source='feature-euclidean'):
    """Exact Euclidean kNN lists over the rows of *X*; ties by ascending id."""
    k = _check_k(k)
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    n = X.shape[0]
    if n < 2:
        raise DataError('feature_knn needs at least 2 rows')
    if k > n - 1:
        raise DataError('k={} exceeds n - 1 = {}'.format(k, n - 1))
    if not np.all(np.isfinite(X)):
        raise DataError('feature matrix contains non-finite values')
    lists = []
    for start in range(0, n, _BLOCK_ROWS):
        stop = min(start + _BLOCK_ROWS, n)
        dist = cdist(X[start:stop], X, metric='sqeuclidean')
        dist[np.arange(stop - start), np.arange(start, stop)] = np.inf
        # stable sort keeps ascending ids within equal distances
        order = np.argsort(dist, axis=1, kind='stable')[:, :k]
        lists.extend(order)
    return KnnGraph(k, lists, source)


def oracle_latent_knn(latents, k):
    """kNN lists on the true latent positions (only available for synthetic graphs)."""
    return feature_knn(np.asarray(latents, dtype=np.float64).reshape(-1, 1), k, source='oracle-latent')


GRAPH_KNN_BUILDERS = {
    'shortest-path': shortest_path_knn,
    'jaccard': jaccard_knn,
    'shared-neighbors': shared_neighbors_knn,
}


def knn_from_source(g, source, k, graph_distance='shortest-path', latents=None):
    """Build the kNN graph named by *source*: ``graph``, ``feature`` or ``oracle``."""
    if source == 'graph':
        if graph_distance not in GRAPH_KNN_BUILDERS:
            raise DataError('unknown graph distance: {}'.format(graph_distance))
        knn = GRAPH_KNN_BUILDERS[graph_distance](g, k)
    elif source == 'feature':
        if g.features is None:
            raise DataError('a feature kNN graph was requested but the graph has no features')
        knn = feature_knn(g.features, min(k, g.num_nodes - 1))
    elif source == 'oracle':
        if latents is None:
            raise DataError('an oracle kNN graph needs the latent positions')
        knn = oracle_latent_knn(latents, min(k, g.num_nodes - 1))
    else:
        raise DataError('unknown kNN source: {}'.format(source))
    short = sum(1 for l in knn.lists if len(l) < k)
    if short > 0:
        logger.warning('%d of %d %s kNN lists have fewer than k=%d entries', short, len(knn), knn.source, k)
    return knn
