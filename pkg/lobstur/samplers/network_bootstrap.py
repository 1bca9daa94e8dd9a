# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import numpy as np
import scipy.linalg
from scipy.spatial import cKDTree

from lobstur.data import Graph
from lobstur.data.data_utils import make_rng
from lobstur.errors import DataError
from . import GraphSampler, register_sampler


def adjacency_spectral_embedding(g, d):
    """Top-*d* eigenvectors of the adjacency by eigenvalue magnitude, scaled
    by ``sqrt(|eigenvalue|)``."""
    n = g.num_nodes
    if int(d) != d or not 1 <= d <= n:
        raise DataError('embedding dimension must lie in [1, {}], got {}'.format(n, d))
    adj = g.adjacency().toarray().astype(np.float64)
    try:
        eigvals, eigvecs = scipy.linalg.eigh(adj)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise DataError('adjacency eigendecomposition failed: {}'.format(e))
    order = np.argsort(-np.abs(eigvals), kind='stable')[:int(d)]
    return eigvecs[:, order] * np.sqrt(np.abs(eigvals[order]))


def _latent_edges(latents, rng):
    n = len(latents)
    prob = np.clip(latents @ latents.T, 0., 1.)
    rows, cols = np.triu_indices(n, k=1)
    hits = rng.random(len(rows)) < prob[rows, cols]
    return np.stack([rows[hits], cols[hits]], axis=1)


def network_bootstrap(g, d, k, seed, embedding=None):
    """Resample spectral positions with replacement and regenerate the graph.

    Pairs connect with probability ``clip(<H_i, H_j>, 0, 1)``. Every new node
    copies the features of a uniform member of the *k* original nodes whose
    positions are nearest to its own (the origin included).

    Args:
        g (~lobstur.data.Graph): observed graph
        d (int): embedding dimension
        k (int): feature neighborhood size
        seed (int): replica seed
        embedding (numpy.ndarray, optional): precomputed
            :func:`adjacency_spectral_embedding` of *g*
    """
    if int(k) != k or k < 1:
        raise DataError('k must be a positive integer, got {}'.format(k))
    n = g.num_nodes
    H = adjacency_spectral_embedding(g, d) if embedding is None else embedding
    origins = make_rng(seed, 'origins').integers(n, size=n)
    latents = H[origins]
    edges = _latent_edges(latents, make_rng(seed, 'edges'))

    features = None
    if g.features is not None:
        k = min(int(k), n)
        _, nearest = cKDTree(H).query(latents, k=k)
        nearest = np.asarray(nearest).reshape(n, k)
        picks = make_rng(seed, 'features').integers(k, size=n)
        features = g.features[nearest[np.arange(n), picks]]
    return Graph(n, edges, features)


@register_sampler('network')
class NetworkBootstrapSampler(GraphSampler):
    """Adjacency-spectral-embedding bootstrap."""

    @staticmethod
    def add_args(parser):
        """Add sampler-specific arguments to the parser."""
        parser.add_argument('--embed-dim', type=int, default=16, metavar='D',
                            help='number of eigenpairs kept')
        parser.add_argument('--k', type=int, default=20, metavar='N',
                            help='latent neighborhood size used to copy features')

    def __init__(self, args, graph):
        super().__init__(args, graph)
        self.d = min(args.embed_dim, graph.num_nodes)
        self.k = args.k
        self.embedding = adjacency_spectral_embedding(graph, self.d)

    def sample(self, seed):
        return network_bootstrap(self.graph, self.d, self.k, seed, embedding=self.embedding)

    def config(self):
        return {'embed_dim': self.d, 'k': self.k}
