# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import hashlib

import numpy as np
import scipy.sparse as sp

from lobstur.errors import DataError
from . import data_utils


KNN_SOURCES = (
    'graph-shortest-path',
    'graph-jaccard',
    'graph-shared-neighbors',
    'feature-euclidean',
    'oracle-latent',
)


def canonical_edges(edges, num_nodes=None):
    """Symmetrize, deduplicate and sort an edge list.

    Self-loops are dropped and every edge is stored once as ``(u, v)`` with
    ``u < v``, rows in lexicographic order.

    Args:
        edges: iterable of node-id pairs or an integer array of shape (m, 2)
        num_nodes (int, optional): if given, every id must lie in
            ``[0, num_nodes)``

    Returns:
        numpy.ndarray: int64 array of shape (m', 2)
    """
    edges = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges)
    if edges.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if edges.ndim != 2 or edges.shape[1] != 2:
        raise DataError('edges must be pairs, got shape {}'.format(edges.shape))
    if not np.issubdtype(edges.dtype, np.integer):
        raise DataError('edge endpoints must be integers')
    edges = edges.astype(np.int64)
    if edges.min() < 0:
        raise DataError('negative node id {}'.format(int(edges.min())))
    if num_nodes is not None and edges.max() >= num_nodes:
        raise DataError('node id {} out of range for {} nodes'.format(int(edges.max()), num_nodes))
    edges = np.sort(edges, axis=1)
    edges = edges[edges[:, 0] != edges[:, 1]]
    if len(edges) == 0:
        return np.zeros((0, 2), dtype=np.int64)
    return np.unique(edges, axis=0)


class Graph(object):
    """An undirected, simple graph with optional dense node features.

    Instances are immutable: the edge array and the feature matrix are
    read-only, and every method returns new objects.

    Args:
        num_nodes (int): number of nodes, ids are ``0 .. num_nodes - 1``
        edges: iterable of node-id pairs; symmetrized, deduplicated and
            stripped of self-loops on construction
        features (numpy.ndarray, optional): real matrix with one row per node
    """

    def __init__(self, num_nodes, edges=(), features=None):
        num_nodes = int(num_nodes)
        if num_nodes < 0:
            raise DataError('number of nodes must be non-negative, got {}'.format(num_nodes))
        self.num_nodes = num_nodes
        self.edges = data_utils.read_only(canonical_edges(edges, num_nodes))
        if features is not None:
            features = np.array(features, dtype=np.float64)
            if features.ndim == 1:
                features = features[:, None]
            if features.ndim != 2 or features.shape[1] < 1:
                raise DataError('features must be a 2-d matrix with at least one column')
            if features.shape[0] != num_nodes:
                raise DataError('feature matrix has {} rows but the graph has {} nodes'.format(
                    features.shape[0], num_nodes))
            if not np.all(np.isfinite(features)):
                raise DataError('feature matrix contains non-finite values')
            features = data_utils.read_only(features)
        self.features = features
        self._adjacency = None

    def __len__(self):
        return self.num_nodes

    def __repr__(self):
        return 'Graph(num_nodes={}, num_edges={}, features={})'.format(
            self.num_nodes, self.num_edges,
            None if self.features is None else self.features.shape,
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        if self.num_nodes != other.num_nodes or not np.array_equal(self.edges, other.edges):
            return False
        if self.features is None or other.features is None:
            return self.features is None and other.features is None
        return np.array_equal(self.features, other.features)

    __hash__ = None

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def num_features(self):
        return 0 if self.features is None else self.features.shape[1]

    def edge_set(self):
        return frozenset(map(tuple, self.edges.tolist()))

    def adjacency(self):
        """Symmetric 0/1 adjacency as a :class:`scipy.sparse.csr_matrix`."""
        if self._adjacency is None:
            n = self.num_nodes
            rows = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
            cols = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
            data = np.ones(len(rows), dtype=np.int64)
            adj = sp.csr_matrix((data, (rows, cols)), shape=(n, n))
            adj.sort_indices()
            self._adjacency = adj
        return self._adjacency

    def degrees(self):
        return np.bincount(self.edges.ravel(), minlength=self.num_nodes).astype(np.int64)

    def neighbors(self, node):
        adj = self.adjacency()
        return adj.indices[adj.indptr[node]:adj.indptr[node + 1]]

    def with_features(self, features):
        return Graph(self.num_nodes, self.edges, features)

    def with_edges(self, edges):
        return Graph(self.num_nodes, edges, self.features)

    def relabel(self, perm):
        """Return the graph with node ``i`` renamed to ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.num_nodes)):
            raise DataError('relabeling must be a permutation of the node ids')
        features = None
        if self.features is not None:
            features = np.empty_like(self.features)
            features[perm] = self.features
        return Graph(self.num_nodes, perm[self.edges], features)

    def digest(self):
        h = hashlib.sha256()
        h.update(np.int64(self.num_nodes).tobytes())
        h.update(self.edges.tobytes())
        if self.features is not None:
            h.update(self.features.tobytes())
        return h.hexdigest()


class KnnGraph(object):
    """Directed k-nearest-neighbor lists, nearest first.

    Args:
        k (int): requested neighbor count
        lists: one sequence of neighbor ids per node (may be shorter than k)
        source (str): how distances were measured, one of
            :data:`KNN_SOURCES`
    """

    def __init__(self, k, lists, source):
        if source not in KNN_SOURCES:
            raise ValueError('unknown kNN source: {}'.format(source))
        self.k = int(k)
        self.source = source
        self.lists = tuple(data_utils.read_only(np.asarray(l, dtype=np.int64)) for l in lists)
        for i, l in enumerate(self.lists):
            if len(l) > self.k:
                raise DataError('kNN list of node {} has {} > k={} entries'.format(i, len(l), self.k))
            if len(np.unique(l)) != len(l) or (l == i).any():
                raise DataError('kNN list of node {} repeats a node or contains itself'.format(i))
            if len(l) > 0 and (l.min() < 0 or l.max() >= len(self.lists)):
                raise DataError('kNN list of node {} has out-of-range ids'.format(i))

    def __len__(self):
        return len(self.lists)

    def __getitem__(self, node):
        return self.lists[node]

    def __repr__(self):
        return 'KnnGraph(k={}, num_nodes={}, source={})'.format(self.k, len(self), self.source)

    @property
    def num_nodes(self):
        return len(self.lists)

    def matrix(self):
        """Sparse 0/1 matrix with ``M[i, m] = 1`` iff ``m`` is in the list of ``i``."""
        n = len(self.lists)
        lengths = np.array([len(l) for l in self.lists], dtype=np.int64)
        rows = np.repeat(np.arange(n), lengths)
        cols = np.concatenate(self.lists) if n > 0 else np.zeros(0, dtype=np.int64)
        return sp.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(n, n))
