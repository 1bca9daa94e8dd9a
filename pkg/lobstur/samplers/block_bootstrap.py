# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Spatial block bootstrap: the bounding box of 2-d node coordinates is cut into
square cells, the cell contents are permuted and the graph is rebuilt from
the shuffled coordinates.
"""

import numpy as np
from scipy.spatial import cKDTree

from lobstur.data import Graph, feature_knn
from lobstur.data.data_utils import make_rng
from lobstur.errors import DataError
from . import GraphSampler, register_sampler


class KnnBuilder(object):
    """Symmetrized Euclidean kNN graph on the coordinates."""

    def __init__(self, k):
        self.k = k
        self.spec = 'knn:{}'.format(k)

    def __call__(self, coords):
        knn = feature_knn(coords, self.k)
        rows = np.repeat(np.arange(len(coords)), [len(l) for l in knn.lists])
        return np.stack([rows, np.concatenate(knn.lists)], axis=1)


class RadiusBuilder(object):
    """All pairs at Euclidean distance at most *radius*."""

    def __init__(self, radius):
        if radius <= 0:
            raise DataError('radius must be positive, got {}'.format(radius))
        self.radius = radius
        self.spec = 'radius:{}'.format(radius)

    def __call__(self, coords):
        return cKDTree(coords).query_pairs(self.radius, output_type='ndarray')


def parse_builder(spec):
    """Parse ``knn:<k>`` or ``radius:<r>``."""
    kind, _, value = str(spec).partition(':')
    try:
        if kind == 'knn':
            return KnnBuilder(int(value))
        if kind == 'radius':
            return RadiusBuilder(float(value))
    except ValueError:
        pass
    raise DataError('invalid graph builder: {} (expected knn:<k> or radius:<r>)'.format(spec))


def _check_coords(coords):
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[1] != 2:
        raise DataError('coordinates must be an n x 2 matrix, got shape {}'.format(coords.shape))
    if not np.all(np.isfinite(coords)):
        raise DataError('coordinates contain non-finite values')
    return coords


def shuffle_blocks(coords, grid_size, seed):
    """Permute the contents of all grid cells; points keep their in-cell offsets.

    The grid has ``ceil(extent / grid_size)`` cells per axis (at least one);
    points on the upper edge of the bounding box belong to the last cell.
    """
    coords = _check_coords(coords)
    if not grid_size > 0:
        raise DataError('grid_size must be positive, got {}'.format(grid_size))
    if len(coords) == 0:
        return coords
    lo = coords.min(axis=0)
    extent = coords.max(axis=0) - lo
    shape = np.maximum(np.ceil(extent / grid_size).astype(np.int64), 1)
    cells = np.minimum(np.floor((coords - lo) / grid_size).astype(np.int64), shape - 1)
    nx, ny = shape
    perm = make_rng(seed, 'blocks').permutation(int(nx * ny))
    target = perm[cells[:, 0] * ny + cells[:, 1]]
    offsets = coords - (lo + grid_size * cells)
    return lo + grid_size * np.stack([target // ny, target % ny], axis=1) + offsets


def block_bootstrap(coords, grid_size, builder, seed, extra_features=None):
    """Shuffle grid cells and rebuild the graph.

    Features are the new coordinates, followed by *extra_features* (one row
    per node, carried along unchanged) when given.
    """
    if isinstance(builder, str):
        builder = parse_builder(builder)
    shuffled = shuffle_blocks(coords, grid_size, seed)
    features = shuffled
    if extra_features is not None:
        extra_features = np.asarray(extra_features, dtype=np.float64)
        if extra_features.shape[0] != len(shuffled):
            raise DataError('{} extra feature rows for {} nodes'.format(extra_features.shape[0], len(shuffled)))
        features = np.hstack([shuffled, extra_features.reshape(len(shuffled), -1)])
    return Graph(len(shuffled), builder(shuffled), features)


@register_sampler('block')
class BlockBootstrapSampler(GraphSampler):
    """Block bootstrap on the first two feature columns; the remaining columns
    stay with their nodes."""

    @staticmethod
    def add_args(parser):
        """Add sampler-specific arguments to the parser."""
        parser.add_argument('--grid-size', type=float, required=True, metavar='S',
                            help='side length of the square cells')
        parser.add_argument('--block-builder', default='knn:10', metavar='SPEC',
                            help='graph rebuilt from the shuffled coordinates: knn:<k> or radius:<r>')

    def __init__(self, args, graph):
        super().__init__(args, graph)
        if graph.features is None or graph.num_features < 2:
            raise DataError('the block bootstrap needs at least two feature columns as coordinates')
        self.coords = graph.features[:, :2]
        self.extra_features = graph.features[:, 2:] if graph.num_features > 2 else None
        self.grid_size = args.grid_size
        self.builder = parse_builder(args.block_builder)

    def sample(self, seed):
        return block_bootstrap(self.coords, self.grid_size, self.builder, seed, extra_features=self.extra_features)

    def config(self):
        return {'grid_size': self.grid_size, 'block_builder': self.builder.spec}
