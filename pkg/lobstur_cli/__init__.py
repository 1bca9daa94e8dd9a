# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import os

from lobstur.data import graph_io, load_graph_dir, load_latents


def load_input_graph(args):
    """Load ``--graph`` (with ``--features``) and, if available, ``--latents``."""
    g = load_graph_dir(args.graph, args.features)
    print('| loaded graph {}: {} nodes, {} edges, {} features'.format(
        args.graph, g.num_nodes, g.num_edges, g.num_features))
    latents = None
    latents_path = getattr(args, 'latents', None)
    if latents_path is not None:
        latents = load_latents(latents_path)
        if latents is None:
            raise FileNotFoundError('latents file not found: {}'.format(latents_path))
    elif os.path.isdir(args.graph):
        latents = load_latents(args.graph)
    return g, latents


def input_paths(args):
    """Input files recorded (with digests) in the run manifest."""
    paths = {'graph': args.graph}
    if getattr(args, 'features', None) is not None:
        paths['features'] = args.features
    if getattr(args, 'latents', None) is not None:
        paths['latents'] = args.latents
    elif os.path.isdir(args.graph) and os.path.exists(os.path.join(args.graph, graph_io.LATENTS_FILE)):
        paths['latents'] = os.path.join(args.graph, graph_io.LATENTS_FILE)
    return paths
