# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.


class GraphSampler(object):
    """
    Samplers hold an observed graph together with whatever they precompute
    from it (kNN graphs, spectral embeddings, ...) and draw one replica per
    call to :func:`sample`.
    """

    @staticmethod
    def add_args(parser):
        """Add sampler-specific arguments to the parser."""
        pass

    def __init__(self, args, graph):
        self.args = args
        self.graph = graph

    @classmethod
    def setup_sampler(cls, args, graph, latents=None, **kwargs):
        """Setup the sampler (e.g., build kNN graphs).

        Args:
            args (argparse.Namespace): parsed command-line arguments
            graph (~lobstur.data.Graph): the observed graph
            latents (numpy.ndarray, optional): true latent positions, only
                known for synthetic graphs
        """
        return cls(args, graph)

    def sample(self, seed):
        """Draw one replica.

        Args:
            seed (int): 64-bit seed that fully determines the replica

        Returns:
            ~lobstur.data.Graph: the replica
        """
        raise NotImplementedError

    def config(self):
        """JSON-serializable description recorded in run manifests."""
        return {}
