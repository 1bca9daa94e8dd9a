# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Local nonparametric bootstrap: node features are copied from a kNN
neighborhood and edges are rewired by stem matching on kNN-averaged edge
probabilities, either conditionally on the observed nodes or after
resampling the nodes themselves.
"""

import numpy as np
import scipy.sparse as sp

from lobstur.data import Graph, knn_from_source
from lobstur.data.data_utils import make_rng
from lobstur.errors import DataError
from lobstur import rewiring
from . import GraphSampler, generate_replicas, register_sampler


MODES = ('conditional', 'marginal')
KNN_SELECTORS = ('graph', 'feature', 'oracle')
REWIRINGS = ('exact', 'approx-a2')
GRAPH_DISTANCES = ('shortest-path', 'jaccard', 'shared-neighbors')


class BootstrapConfig(object):
    """Settings of the local bootstrap.

    Args:
        mode (str): ``conditional`` or ``marginal``
        knn_for_features (str): ``graph``, ``feature`` or ``oracle``
        knn_for_edges (str): ``graph``, ``feature`` or ``oracle``
        k (int): neighborhood size. Default: ``20``
        rewiring (str): ``exact`` or ``approx-a2``
        graph_distance (str): distance behind ``graph`` kNN lists
        seed (int): base seed
    """

    def __init__(self, mode='conditional', knn_for_features='graph', knn_for_edges='graph', k=20,
                 rewiring='exact', graph_distance='shortest-path', seed=0):
        if mode not in MODES:
            raise DataError('unknown bootstrap mode: {}'.format(mode))
        for selector in (knn_for_features, knn_for_edges):
            if selector not in KNN_SELECTORS:
                raise DataError('unknown kNN source: {}'.format(selector))
        if rewiring not in REWIRINGS:
            raise DataError('unknown rewiring: {}'.format(rewiring))
        if graph_distance not in GRAPH_DISTANCES:
            raise DataError('unknown graph distance: {}'.format(graph_distance))
        if int(k) != k or k < 1:
            raise DataError('k must be a positive integer, got {}'.format(k))
        self.mode = mode
        self.knn_for_features = knn_for_features
        self.knn_for_edges = knn_for_edges
        self.k = int(k)
        self.rewiring = rewiring
        self.graph_distance = graph_distance
        self.seed = int(seed)

    @classmethod
    def solution(cls, number, **kwargs):
        """Solution 1 builds edges from a feature kNN graph, solution 2 from the graph itself."""
        if number == 1:
            return cls(knn_for_features='graph', knn_for_edges='feature', **kwargs)
        if number == 2:
            return cls(knn_for_features='graph', knn_for_edges='graph', **kwargs)
        raise DataError('unknown solution: {}'.format(number))

    @classmethod
    def from_args(cls, args):
        features, edges = args.knn_for_features, args.knn_for_edges
        if getattr(args, 'solution', None) is not None:
            features, edges = ('graph', 'feature') if args.solution == 1 else ('graph', 'graph')
        return cls(
            mode=args.mode, knn_for_features=features, knn_for_edges=edges, k=args.k,
            rewiring=args.rewiring, graph_distance=args.graph_distance, seed=args.seed,
        )

    def replace(self, **kwargs):
        fields = self.to_dict()
        fields.update(kwargs)
        return BootstrapConfig(**fields)

    def to_dict(self):
        return {
            'mode': self.mode,
            'knn_for_features': self.knn_for_features,
            'knn_for_edges': self.knn_for_edges,
            'k': self.k,
            'rewiring': self.rewiring,
            'graph_distance': self.graph_distance,
            'seed': self.seed,
        }

    def __eq__(self, other):
        return isinstance(other, BootstrapConfig) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return 'BootstrapConfig({})'.format(', '.join('{}={!r}'.format(k, v) for k, v in self.to_dict().items()))


def _resample_rows(features, knn, owners, rng):
    """Row ``j`` of the output is drawn uniformly from the candidate set of
    node ``owners[j]``: the node itself plus its kNN list."""
    owners = np.asarray(owners, dtype=np.int64)
    sizes = np.array([len(knn[o]) + 1 for o in owners.tolist()], dtype=np.int64)
    picks = np.minimum((rng.random(len(owners)) * sizes).astype(np.int64), sizes - 1)
    source = owners.copy()
    for j in np.flatnonzero(picks > 0).tolist():
        source[j] = knn[owners[j]][picks[j] - 1]
    return features[source]


def resample_features(g, knn, seed):
    """Copy every feature row from a uniform member of ``{i} + knn[i]``."""
    if g.features is None:
        raise DataError('resample_features needs node features')
    if knn.num_nodes != g.num_nodes:
        raise DataError('kNN graph has {} nodes, graph has {}'.format(knn.num_nodes, g.num_nodes))
    return _resample_rows(g.features, knn, np.arange(g.num_nodes), make_rng(seed, 'features'))


def _bootstrap_from_origins(g, cfg, knn_features, knn_edges, origins, seed):
    """Replica where node ``j`` stands in for observed node ``origins[j]``.

    Origin-level candidate weights ``C`` become replica-level weights
    ``P C P^T`` with ``P[j, origins[j]] = 1``, so an origin with ``c``
    copies offers ``c`` candidate nodes. Stems are the origin degrees.
    """
    n = g.num_nodes
    features = None
    if g.features is not None:
        features = _resample_rows(g.features, knn_features, origins, make_rng(seed, 'features'))

    if cfg.rewiring == 'exact':
        candidates = rewiring.knn_candidates(g.adjacency(), knn_edges)
    else:
        candidates = rewiring.a2_candidates(g.adjacency())
    is_identity = np.array_equal(origins, np.arange(n))
    if not is_identity:
        select = sp.csr_matrix((np.ones(n, dtype=np.int64), (np.arange(n), origins)), shape=(n, n))
        candidates = select @ candidates @ select.T
    stems = g.degrees()[origins]
    edges = rewiring.rewire_stems(candidates, stems, make_rng(seed, 'edges'), allow_self=cfg.rewiring == 'exact')
    return Graph(n, edges, features)


def _build_knn(g, cfg, selector, latents):
    return knn_from_source(g, selector, cfg.k, graph_distance=cfg.graph_distance, latents=latents)


class LocalBootstrap(object):
    """Precomputes the kNN graphs of *g* once and draws replicas on demand."""

    def __init__(self, g, cfg, latents=None):
        if g.num_nodes < 2:
            raise DataError('the local bootstrap needs at least 2 nodes')
        self.graph = g
        self.cfg = cfg
        self.knn_features = None
        if g.features is not None:
            self.knn_features = _build_knn(g, cfg, cfg.knn_for_features, latents)
        self.knn_edges = None
        if cfg.rewiring == 'exact':
            if cfg.knn_for_edges == cfg.knn_for_features and self.knn_features is not None:
                self.knn_edges = self.knn_features
            else:
                self.knn_edges = _build_knn(g, cfg, cfg.knn_for_edges, latents)

    def draw_origins(self, seed):
        """Observed node behind every replica node: uniform with replacement
        in marginal mode, the identity otherwise."""
        n = self.graph.num_nodes
        if self.cfg.mode == 'marginal':
            return make_rng(seed, 'origins').integers(n, size=n)
        return np.arange(n)

    def sample(self, seed):
        origins = self.draw_origins(seed)
        return _bootstrap_from_origins(self.graph, self.cfg, self.knn_features, self.knn_edges, origins, seed)


def bootstrap_conditional(g, cfg, latents=None):
    """One replica conditioned on the observed nodes (seed ``cfg.seed``)."""
    return LocalBootstrap(g, cfg.replace(mode='conditional'), latents).sample(cfg.seed)


def bootstrap_marginal(g, cfg, latents=None):
    """One replica over nodes drawn with replacement (seed ``cfg.seed``)."""
    return LocalBootstrap(g, cfg.replace(mode='marginal'), latents).sample(cfg.seed)


def make_replicas(g, count, cfg, latents=None, num_workers=1, wrap=None):
    """*count* replicas; replica ``i`` uses seed ``derive_seed(cfg.seed, i)``."""
    return generate_replicas(LocalBootstrap(g, cfg, latents), count, cfg.seed, num_workers=num_workers, wrap=wrap)


@register_sampler('local')
class LocalBootstrapSampler(GraphSampler):
    """Conditional or marginal local bootstrap."""

    @staticmethod
    def add_args(parser):
        """Add sampler-specific arguments to the parser."""
        # fmt: off
        parser.add_argument('--mode', default='conditional', choices=MODES,
                            help='condition on the observed nodes or resample them')
        parser.add_argument('--solution', type=int, default=None, choices=[1, 2],
                            help='preset kNN sources: 1 = edges from feature kNN, '
                                 '2 = edges from graph kNN (overrides --knn-for-*)')
        parser.add_argument('--knn-for-features', '--knn-source', default='graph', choices=KNN_SELECTORS,
                            help='kNN graph used to resample features')
        parser.add_argument('--knn-for-edges', default='graph', choices=KNN_SELECTORS,
                            help='kNN graph used to rewire edges')
        parser.add_argument('--k', type=int, default=20, metavar='N',
                            help='neighborhood size')
        parser.add_argument('--rewiring', default='exact', choices=REWIRINGS,
                            help='kNN stem matching or the A^2 approximation')
        parser.add_argument('--graph-distance', default='shortest-path', choices=GRAPH_DISTANCES,
                            help='distance behind graph kNN lists')
        # fmt: on

    def __init__(self, args, graph, latents=None):
        super().__init__(args, graph)
        self.cfg = BootstrapConfig.from_args(args)
        self.bootstrap = LocalBootstrap(graph, self.cfg, latents)

    @classmethod
    def setup_sampler(cls, args, graph, latents=None, **kwargs):
        return cls(args, graph, latents)

    def sample(self, seed):
        return self.bootstrap.sample(seed)

    def config(self):
        return self.cfg.to_dict()
