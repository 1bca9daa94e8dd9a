# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

from .graph import Graph, KnnGraph, KNN_SOURCES, canonical_edges
from .graph_io import (
    load_graph,
    load_graph_dir,
    load_latents,
    load_matrix,
    save_graph,
    save_graph_dir,
    save_matrix,
)
from .knn import (
    feature_knn,
    jaccard_knn,
    knn_from_source,
    oracle_latent_knn,
    shared_neighbors_knn,
    shortest_path_knn,
)

__all__ = [
    'Graph',
    'KnnGraph',
    'KNN_SOURCES',
    'canonical_edges',
    'feature_knn',
    'jaccard_knn',
    'knn_from_source',
    'load_graph',
    'load_graph_dir',
    'load_latents',
    'load_matrix',
    'oracle_latent_knn',
    'save_graph',
    'save_graph_dir',
    'save_matrix',
    'shared_neighbors_knn',
    'shortest_path_knn',
]
