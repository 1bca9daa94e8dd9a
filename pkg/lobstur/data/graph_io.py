# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import os

import numpy as np

from lobstur.errors import DataError
from .graph import Graph


EDGES_FILE = 'edges.txt'
FEATURES_FILE = 'features.csv'
LATENTS_FILE = 'latents.csv'


def _read_edge_file(path):
    """Parse ``u v`` lines; returns (edges, explicit node count or None)."""
    num_nodes = None
    pairs = []
    with open(path, 'r') as f:
        for lineno, line in enumerate(f, start=1):
            tokens = line.split()
            if len(tokens) == 0:
                continue
            if tokens[0] == '#n':
                if lineno != 1 or len(tokens) != 2:
                    raise DataError('{}:{}: "#n <count>" is only allowed as the first line'.format(path, lineno))
                try:
                    num_nodes = int(tokens[1])
                except ValueError:
                    raise DataError('{}:{}: invalid node count {!r}'.format(path, lineno, tokens[1]))
                continue
            if len(tokens) != 2:
                raise DataError('{}:{}: expected two node ids, got {!r}'.format(path, lineno, line.rstrip('\n')))
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise DataError('{}:{}: non-integer node id in {!r}'.format(path, lineno, line.rstrip('\n')))
            if u < 0 or v < 0:
                raise DataError('{}:{}: negative node id'.format(path, lineno))
            pairs.append((u, v))
    edges = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    return edges, num_nodes


def load_matrix(path):
    """Load a headerless, comma-separated real matrix (one row per line)."""
    if os.path.getsize(path) == 0:
        return np.zeros((0, 0), dtype=np.float64)
    try:
        matrix = np.loadtxt(path, delimiter=',', dtype=np.float64, ndmin=2)
    except ValueError as e:
        raise DataError('{}: {}'.format(path, e))
    if not np.all(np.isfinite(matrix)):
        raise DataError('{}: matrix contains non-finite values'.format(path))
    return matrix


def save_matrix(matrix, path):
    """Write *matrix* as headerless CSV with 17 significant digits."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix[:, None]
    with open(path, 'w', newline='\n') as f:
        if matrix.size > 0:
            np.savetxt(f, matrix, fmt='%.17g', delimiter=',')


def load_graph(edge_path, feature_path=None):
    """Load a :class:`~lobstur.data.Graph` from an edge list and optional features.

    The node count comes from a ``#n <count>`` header if present, otherwise
    from the feature row count when there are no edges, otherwise it is
    ``1 + max node id``.
    """
    edges, num_nodes = _read_edge_file(edge_path)
    features = None
    if feature_path is not None:
        features = load_matrix(feature_path)
    if num_nodes is None:
        if len(edges) > 0:
            num_nodes = int(edges.max()) + 1
        elif features is not None:
            num_nodes = features.shape[0]
        else:
            num_nodes = 0
    if len(edges) > 0 and edges.max() >= num_nodes:
        raise DataError('{}: node id {} out of range for {} nodes'.format(edge_path, int(edges.max()), num_nodes))
    if features is not None and features.shape[0] != num_nodes:
        raise DataError('{}: {} feature rows for {} nodes'.format(feature_path, features.shape[0], num_nodes))
    return Graph(num_nodes, edges, features)


def save_graph(graph, edge_path, feature_path=None):
    """Write *graph* as ``#n`` header plus ``u v`` lines (and features as CSV)."""
    with open(edge_path, 'w', newline='\n') as f:
        f.write('#n {}\n'.format(graph.num_nodes))
        for u, v in graph.edges.tolist():
            f.write('{} {}\n'.format(u, v))
    if feature_path is not None and graph.features is not None:
        save_matrix(graph.features, feature_path)


def load_graph_dir(path, feature_path=None):
    """Load a graph from a directory (``edges.txt`` + ``features.csv``) or an edge file."""
    if os.path.isdir(path):
        edge_path = os.path.join(path, EDGES_FILE)
        if feature_path is None and os.path.exists(os.path.join(path, FEATURES_FILE)):
            feature_path = os.path.join(path, FEATURES_FILE)
    else:
        edge_path = path
    if not os.path.exists(edge_path):
        raise DataError('edge file not found: {}'.format(edge_path))
    return load_graph(edge_path, feature_path)


def load_latents(path):
    if os.path.isdir(path):
        path = os.path.join(path, LATENTS_FILE)
    if not os.path.exists(path):
        return None
    return load_matrix(path)[:, 0]


def save_graph_dir(graph, path, latents=None):
    os.makedirs(path, exist_ok=True)
    save_graph(graph, os.path.join(path, EDGES_FILE), os.path.join(path, FEATURES_FILE))
    if latents is not None:
        save_matrix(np.asarray(latents)[:, None], os.path.join(path, LATENTS_FILE))
