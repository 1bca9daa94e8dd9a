# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Attributed graphon models: latent ``U_i ~ Unif[0, 1]``, edges
``A_ij ~ Bernoulli(rho * W(U_i, U_j))`` and features ``X_i = g(U_i) + eps_i``.
"""

import numpy as np

from lobstur.data import Graph
from lobstur.data.data_utils import make_rng
from lobstur.errors import DataError


SCENARIO_REGISTRY = {}

DEFAULT_SPARSITY = 0.01
DEFAULT_NUM_FEATURES = 150

_GRID = np.linspace(0., 1., 101)


class GraphonModel(object):
    """A symmetric kernel with a sparsity factor, a feature map and a noise level.

    Args:
        kernel (callable): ``W(u, v)`` on broadcastable arrays, values in
            ``[0, 1]`` after scaling by the sparsity factor
        feature_map (callable): ``g(u)`` mapping a length-n vector of
            latents to an ``n x p`` matrix
        sparsity (float or str): constant ``rho`` in ``(0, 1]`` or ``'log'``
            for ``rho_n = log(n) / n``
        noise_sigma (float): standard deviation of the Gaussian feature noise
        name (str, optional): preset id, recorded in manifests
    """

    def __init__(self, kernel, feature_map, sparsity=DEFAULT_SPARSITY, noise_sigma=0.1, name=None):
        self.kernel = kernel
        self.feature_map = feature_map
        self.sparsity = sparsity
        self.noise_sigma = float(noise_sigma)
        self.name = name
        if sparsity == 'log':
            # log(n) / n <= 1 / e for every n >= 1
            rho_max = 1. / np.e
        else:
            rho_max = float(sparsity)
            if not 0. < rho_max <= 1.:
                raise DataError('sparsity must lie in (0, 1], got {}'.format(sparsity))
        if self.noise_sigma < 0:
            raise DataError('noise_sigma must be non-negative')

        u, v = np.meshgrid(_GRID, _GRID, indexing='ij')
        w = np.asarray(kernel(u, v), dtype=np.float64)
        if w.shape != u.shape:
            w = np.broadcast_to(w, u.shape)
        if np.any(w < 0) or np.any(rho_max * w > 1.):
            raise DataError('kernel leaves [0, 1] after sparsity scaling')
        if not np.array_equal(w, w.T):
            raise DataError('kernel is not symmetric')

    def __repr__(self):
        return 'GraphonModel(name={}, sparsity={}, noise_sigma={})'.format(
            self.name, self.sparsity, self.noise_sigma)

    def rho(self, n):
        if self.sparsity == 'log':
            return float(np.log(n) / n) if n > 1 else 0.
        return float(self.sparsity)

    def edge_probability(self, u, v, n):
        """Effective ``rho_n * W(u, v)``."""
        return self.rho(n) * np.asarray(self.kernel(u, v), dtype=np.float64)

    def to_dict(self):
        return {'name': self.name, 'sparsity': self.sparsity, 'noise_sigma': self.noise_sigma}


def register_scenario(name):
    """Decorator registering a preset builder ``fn(**kwargs) -> GraphonModel``."""

    def register_scenario_fn(fn):
        if name in SCENARIO_REGISTRY:
            raise ValueError('Cannot register duplicate scenario ({})'.format(name))
        SCENARIO_REGISTRY[name] = fn
        return fn

    return register_scenario_fn


def scenario(name, **kwargs):
    """Build a preset :class:`GraphonModel` by id (``1``-``4``, ``cosine``, ``two-block``)."""
    name = str(name)
    if name not in SCENARIO_REGISTRY:
        raise DataError('unknown scenario: {} (choose from {})'.format(name, ', '.join(SCENARIO_REGISTRY)))
    model = SCENARIO_REGISTRY[name](**kwargs)
    model.name = model.name or name
    return model


def _band_kernel(width):
    def kernel(u, v):
        return (np.abs(np.subtract(u, v)) < width).astype(np.float64)
    return kernel


def _distance_kernel(u, v):
    return 1. - np.abs(np.subtract(u, v))


def _linear_features(num_features, slope=5.):
    def feature_map(u):
        return np.repeat(slope * np.asarray(u, dtype=np.float64)[:, None], num_features, axis=1)
    return feature_map


def _sine_features(num_features, frequency=10.):
    def feature_map(u):
        return np.repeat(np.sin(frequency * np.asarray(u, dtype=np.float64))[:, None], num_features, axis=1)
    return feature_map


@register_scenario('1')
def localized_linear(sparsity=DEFAULT_SPARSITY, noise_sigma=0.1, num_features=DEFAULT_NUM_FEATURES):
    return GraphonModel(_band_kernel(0.01), _linear_features(num_features), sparsity, noise_sigma)


@register_scenario('2')
def structured_oscillatory(sparsity=DEFAULT_SPARSITY, noise_sigma=0.1, num_features=DEFAULT_NUM_FEATURES):
    return GraphonModel(_distance_kernel, _sine_features(num_features), sparsity, noise_sigma)


@register_scenario('3')
def structured_linear(sparsity=DEFAULT_SPARSITY, noise_sigma=0.1, num_features=DEFAULT_NUM_FEATURES):
    return GraphonModel(_distance_kernel, _linear_features(num_features), sparsity, noise_sigma)


@register_scenario('4')
def localized_oscillatory(sparsity=DEFAULT_SPARSITY, noise_sigma=0.1, num_features=DEFAULT_NUM_FEATURES):
    return GraphonModel(_band_kernel(0.01), _sine_features(num_features), sparsity, noise_sigma)


@register_scenario('cosine')
def cosine(eta=3., sparsity=DEFAULT_SPARSITY, noise_sigma=0.1, num_features=DEFAULT_NUM_FEATURES):
    def kernel(u, v):
        return (1. + np.cos(eta * np.pi * np.subtract(u, v))) / 2.
    return GraphonModel(kernel, _linear_features(num_features), sparsity, noise_sigma)


@register_scenario('two-block')
def two_block(within=1., across=0.05, sparsity=0.1, noise_sigma=0.1, num_harmonics=8):
    """Two communities split at ``u = 0.5`` with distance decay inside each block.

    Features are the block sign plus ``num_harmonics`` cosine/sine pairs of u.
    """
    def kernel(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=np.float64), np.asarray(v, dtype=np.float64))
        same = (u < 0.5) == (v < 0.5)
        return np.where(same, within * (1. - 2. * np.abs(u - v)), across)

    def feature_map(u):
        u = np.asarray(u, dtype=np.float64)
        columns = [np.where(u < 0.5, 1., -1.)]
        for m in range(1, num_harmonics + 1):
            columns.append(np.cos(np.pi * m * u))
            columns.append(np.sin(np.pi * m * u))
        return np.stack(columns, axis=1)

    return GraphonModel(kernel, feature_map, sparsity, noise_sigma)


def sample_from_latents(model, latents, seed):
    """Draw edges and features for fixed latent positions.

    Row ``i`` of the upper triangle uses its own Philox substream, so the
    draw for pair ``(i, j)`` does not depend on the order rows are visited.
    """
    latents = np.asarray(latents, dtype=np.float64)
    n = len(latents)
    rho = model.rho(n)
    edges = []
    for i in range(n - 1):
        rng = make_rng(seed, 'edges', substream=i)
        others = latents[i + 1:]
        prob = rho * np.asarray(model.kernel(latents[i], others), dtype=np.float64)
        hits = np.flatnonzero(rng.random(n - i - 1) < prob)
        if len(hits) > 0:
            edges.append(np.stack([np.full(len(hits), i), hits + i + 1], axis=1))
    edges = np.concatenate(edges) if edges else np.zeros((0, 2), dtype=np.int64)

    features = np.asarray(model.feature_map(latents), dtype=np.float64).reshape(n, -1)
    if model.noise_sigma > 0:
        noise = make_rng(seed, 'features').standard_normal(features.shape)
        features = features + model.noise_sigma * noise
    return Graph(n, edges, features)


def sample_graphon(model, n, seed):
    """Sample an attributed graph with *n* nodes; returns ``(graph, latents)``."""
    if n < 1:
        raise DataError('n must be at least 1, got {}'.format(n))
    latents = make_rng(seed, 'latents').random(n)
    return sample_from_latents(model, latents, seed), latents


def estimate_edge_probability(g, knn, i, j):
    """Neighborhood average ``(1/|N(i)|) * sum_{m in N(i)} A[m, j]``."""
    if i == j:
        raise DataError('edge probability needs two distinct nodes')
    neighbors = knn[i]
    if len(neighbors) == 0:
        raise DataError('node {} has an empty kNN list'.format(i))
    adj = g.adjacency()
    return float(adj[neighbors, j].sum()) / len(neighbors)


def estimate_edge_probabilities(g, knn, pairs):
    """Vectorized :func:`estimate_edge_probability` over an ``m x 2`` array of pairs."""
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    lengths = np.array([len(l) for l in knn.lists], dtype=np.float64)
    if np.any(pairs[:, 0] == pairs[:, 1]):
        raise DataError('edge probability needs two distinct nodes')
    if np.any(lengths[pairs[:, 0]] == 0):
        raise DataError('a queried node has an empty kNN list')
    counts = (knn.matrix() @ g.adjacency()).tocsr()
    hits = np.asarray(counts[pairs[:, 0], pairs[:, 1]], dtype=np.float64).ravel()
    return hits / lengths[pairs[:, 0]]
