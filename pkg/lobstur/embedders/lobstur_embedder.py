# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.


class LobsturEmbedder(object):
    """Base class for embedders.

    An embedder is trained on one graph with hyperparameters ``theta`` and
    then applied to another graph of possibly different size.
    """

    @staticmethod
    def add_args(parser):
        """Add embedder-specific arguments to the parser."""
        pass

    @classmethod
    def build_embedder(cls, params):
        """Build a new embedder instance from a dict of parameters."""
        return cls(**params)

    def train(self, g_train, theta, seed):
        """Fit a model on *g_train*; returns an opaque model object."""
        raise NotImplementedError

    def apply(self, model, g_test):
        """Embed *g_test* with a trained *model*; returns an
        :class:`~lobstur.metrics.EmbeddingMatrix`."""
        raise NotImplementedError

    def embed(self, theta, g_train, g_test, seed):
        """Train on *g_train* and embed *g_test*."""
        return self.apply(self.train(g_train, theta, seed), g_test)

    def embed_many(self, theta, g_train, tests, seed):
        """Train once on *g_train* and embed every graph in *tests*."""
        model = self.train(g_train, theta, seed)
        return [self.apply(model, g_test) for g_test in tests]

    def config(self):
        """JSON-serializable description recorded in reports."""
        return {}
