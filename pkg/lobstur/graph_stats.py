# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

from collections import namedtuple, OrderedDict
from concurrent.futures import ProcessPoolExecutor
import logging

import numpy as np
from scipy.sparse.csgraph import connected_components

from lobstur.errors import DataError
from lobstur.meters import AverageMeter


logger = logging.getLogger(__name__)

STAT_FIELDS = [
    'num_nodes',
    'num_edges',
    'avg_degree',
    'density',
    'avg_clustering_coefficient',
    'num_connected_components',
    'giant_component_size',
    'degree_assortativity',
    'pagerank_sum',
    'transitivity',
    'num_triangles',
    'pagerank_index_sum',
]

GraphStats = namedtuple('GraphStats', STAT_FIELDS + ['assortativity_degenerate'])


def pagerank(g, damping=0.85, tol=1e-9, max_iter=1000):
    """PageRank by power iteration; dangling nodes spread their mass uniformly."""
    n = g.num_nodes
    if n == 0:
        return np.zeros(0)
    adj = g.adjacency().astype(np.float64)
    deg = g.degrees()
    inv_deg = np.zeros(n)
    inv_deg[deg > 0] = 1. / deg[deg > 0]
    dangling = deg == 0
    x = np.full(n, 1. / n)
    for _ in range(max_iter):
        prev = x
        x = damping * (adj @ (prev * inv_deg)) + (damping * prev[dangling].sum() + 1. - damping) / n
        if np.abs(x - prev).sum() < n * tol:
            break
    else:
        logger.warning('pagerank did not converge in %d iterations', max_iter)
    return x / x.sum()


def triangles_per_node(g):
    adj = g.adjacency()
    return np.asarray((adj @ adj).multiply(adj).sum(axis=1)).ravel() // 2


def degree_assortativity(g):
    """Pearson correlation of endpoint degrees over both orientations of every
    edge; returns ``(value, degenerate)`` with ``(0, True)`` when undefined."""
    if g.num_edges == 0:
        return 0., True
    deg = g.degrees().astype(np.float64)
    x = np.concatenate([deg[g.edges[:, 0]], deg[g.edges[:, 1]]])
    y = np.concatenate([deg[g.edges[:, 1]], deg[g.edges[:, 0]]])
    x = x - x.mean()
    y = y - y.mean()
    denom = np.sqrt((x * x).sum() * (y * y).sum())
    if denom == 0.:
        return 0., True
    return float((x * y).sum() / denom), False


def graph_stats(g):
    """Compute the scalar statistics of *g*."""
    n, m = g.num_nodes, g.num_edges
    deg = g.degrees()
    tri = triangles_per_node(g)
    pairs = deg * (deg - 1)
    local = np.zeros(n)
    has_pairs = deg >= 2
    local[has_pairs] = 2. * tri[has_pairs] / pairs[has_pairs]
    num_triangles = int(tri.sum() // 3)
    triples = pairs.sum() / 2.
    if n > 0:
        num_components, labels = connected_components(g.adjacency(), directed=False)
        giant = int(np.bincount(labels).max())
    else:
        num_components, giant = 0, 0
    assortativity, degenerate = degree_assortativity(g)
    return GraphStats(
        num_nodes=n,
        num_edges=m,
        avg_degree=2. * m / n if n > 0 else 0.,
        density=2. * m / (n * (n - 1)) if n > 1 else 0.,
        avg_clustering_coefficient=float(local.mean()) if n > 0 else 0.,
        num_connected_components=int(num_components),
        giant_component_size=giant,
        degree_assortativity=assortativity,
        pagerank_sum=float(pagerank(g).sum()) if n > 0 else 0.,
        transitivity=3. * num_triangles / triples if triples > 0 else 0.,
        num_triangles=num_triangles,
        pagerank_index_sum=(n - 1) / 2. if n > 0 else 0.,
        assortativity_degenerate=degenerate,
    )


class StatsComparison(object):
    """Original statistics next to the replica mean and population sd."""

    def __init__(self, original, meters, degenerate_replicas=0):
        self.original = original
        self.meters = meters
        self.degenerate_replicas = degenerate_replicas

    @property
    def count(self):
        return self.meters[STAT_FIELDS[0]].count

    def mean(self, field):
        return self.meters[field].avg

    def sd(self, field):
        return self.meters[field].std

    def to_dict(self):
        report = OrderedDict()
        for field in STAT_FIELDS:
            meter = self.meters[field]
            report[field] = OrderedDict([
                ('original', getattr(self.original, field)),
                ('mean', meter.avg),
                ('sd', meter.std),
                ('count', meter.count),
            ])
        report['assortativity_degenerate'] = OrderedDict([
            ('original', bool(self.original.assortativity_degenerate)),
            ('replicas', self.degenerate_replicas),
            ('count', self.count),
        ])
        return report


def stats_report(original, replicas, num_workers=1, wrap=None):
    """Compare *original* against the statistics of *replicas*.

    Args:
        original (~lobstur.data.Graph): observed graph
        replicas (list): replica graphs
        num_workers (int, optional): processes computing replica statistics
        wrap (callable, optional): wraps the iterator of replica statistics
    """
    replicas = list(replicas)
    if len(replicas) == 0:
        raise DataError('stats_report needs at least one replica')
    if num_workers > 1:
        with ProcessPoolExecutor(max_workers=num_workers) as pool:
            replica_stats = list(pool.map(graph_stats, replicas))
    else:
        replica_stats = (graph_stats(r) for r in replicas)
    if wrap is not None:
        replica_stats = wrap(replica_stats)
    meters = OrderedDict((field, AverageMeter()) for field in STAT_FIELDS)
    degenerate = 0
    for stats in replica_stats:
        for field in STAT_FIELDS:
            meters[field].update(getattr(stats, field))
        degenerate += int(stats.assortativity_degenerate)
    return StatsComparison(graph_stats(original), meters, degenerate_replicas=degenerate)
