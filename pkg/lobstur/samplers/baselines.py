# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Drop-based perturbations used as comparators for the bootstrap.
"""

import numpy as np

from lobstur.data import Graph
from lobstur.data.data_utils import make_rng
from lobstur.errors import DataError
from . import GraphSampler, register_sampler


def _check_rate(rate):
    if not 0. <= rate < 1.:
        raise DataError('drop rate must lie in [0, 1), got {}'.format(rate))


def node_drop(g, rate, seed):
    """Remove every node independently with probability *rate*.

    Surviving nodes are renumbered ``0 .. n' - 1`` in their original order.
    """
    _check_rate(rate)
    keep = make_rng(seed, 'nodes').random(g.num_nodes) >= rate
    new_id = np.cumsum(keep) - 1
    edges = g.edges[keep[g.edges[:, 0]] & keep[g.edges[:, 1]]]
    features = g.features[keep] if g.features is not None else None
    return Graph(int(keep.sum()), new_id[edges], features)


def edge_drop(g, rate, seed):
    """Remove every edge independently with probability *rate*; nodes are kept."""
    _check_rate(rate)
    keep = make_rng(seed, 'edges').random(g.num_edges) >= rate
    return g.with_edges(g.edges[keep])


class DropSampler(GraphSampler):

    @staticmethod
    def add_args(parser):
        """Add sampler-specific arguments to the parser."""
        parser.add_argument('--drop-rate', type=float, default=0.2, metavar='R',
                            help='probability of dropping each element')

    def __init__(self, args, graph):
        super().__init__(args, graph)
        _check_rate(args.drop_rate)
        self.rate = args.drop_rate

    def config(self):
        return {'drop_rate': self.rate}


@register_sampler('node-drop')
class NodeDropSampler(DropSampler):

    def sample(self, seed):
        return node_drop(self.graph, self.rate, seed)


@register_sampler('edge-drop')
class EdgeDropSampler(DropSampler):

    def sample(self, seed):
        return edge_drop(self.graph, self.rate, seed)
