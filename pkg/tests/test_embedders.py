# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import os
import shlex
import sys
import tempfile
import unittest

import numpy as np

from lobstur import graphon
from lobstur.embedders import EMBEDDER_REGISTRY, EmbedderSpec, build_embedder
from lobstur.embedders.builtin_spectral import BuiltinSpectralEmbedder, laplacian_eigenmap, smooth_features
from lobstur.embedders.external_command import ExternalCommandEmbedder
from lobstur.errors import EmbedderError
from lobstur.metrics import stable_rank

from tests import utils as test_utils


# copies the test features (or writes `rows` rows) to the output file
EMBED_SCRIPT = """
import sys
import numpy as np
test_features, out, status, rows = sys.argv[1], sys.argv[2], int(sys.argv[3]), int(sys.argv[4])
if status != 0:
    sys.stderr.write('boom\\n')
    sys.exit(status)
X = np.loadtxt(test_features, delimiter=',', ndmin=2)
if rows >= 0:
    X = X[:rows]
np.savetxt(out, X, delimiter=',')
"""


def small_graph(n=120, seed=0):
    g, _ = graphon.sample_graphon(graphon.scenario('two-block'), n, seed)
    return g


class TestBuiltinEmbedder(unittest.TestCase):

    def test_eigenmap_matches_dense_reference(self):
        g = test_utils.random_graph(40, .25, seed=1)
        A = test_utils.dense_adjacency(g).astype(np.float64)
        d = A.sum(axis=1)
        scale = np.where(d > 0, 1. / np.sqrt(np.maximum(d, 1.)), 0.)
        L = np.eye(40) - scale[:, None] * A * scale[None, :]
        _, vecs = np.linalg.eigh(L)
        expected = vecs[:, 1:4]
        got = laplacian_eigenmap(g, 3)
        self.assertTrue(np.allclose(got @ got.T, expected @ expected.T, atol=1e-8))

    def test_eigenmap_too_large(self):
        with self.assertRaises(EmbedderError):
            laplacian_eigenmap(test_utils.path_graph(4), 4)

    def test_smoothing(self):
        g = test_utils.path_graph(3, features=np.array([[3.], [0.], [0.]]))
        X = smooth_features(g, 1)
        self.assertTrue(np.allclose(X[:, 0], [1.5, 1., 0.]))
        self.assertTrue(np.array_equal(smooth_features(g, 0), g.features))

    def test_train_and_apply(self):
        g_train, g_test = small_graph(seed=1), small_graph(n=90, seed=2)
        embedder = BuiltinSpectralEmbedder()
        H = embedder.embed({'p': 4, 's': 1}, g_train, g_test, seed=0)
        self.assertEqual(H.shape, (90, 4))
        H1 = embedder.embed({'p': 1, 's': 2}, g_train, g_test, seed=0)
        self.assertEqual(stable_rank(H1), 1.)
        many = embedder.embed_many({'p': 4, 's': 1}, g_train, [g_test, g_train], seed=0)
        self.assertTrue(np.array_equal(np.asarray(many[0]), np.asarray(H)))
        self.assertEqual(many[1].shape, (120, 4))

    def test_deterministic(self):
        g_train, g_test = small_graph(seed=3), small_graph(seed=4)
        embedder = BuiltinSpectralEmbedder()
        a = embedder.embed({'p': 3}, g_train, g_test, seed=0)
        b = embedder.embed({'p': 3}, g_train, g_test, seed=5)
        self.assertEqual(a.digest(), b.digest())

    def test_errors(self):
        embedder = BuiltinSpectralEmbedder()
        with self.assertRaises(EmbedderError):
            embedder.embed({'p': 2}, test_utils.cycle_graph(10), test_utils.cycle_graph(10), seed=0)
        g = small_graph()
        narrow = test_utils.cycle_graph(10, features=np.ones((10, 2)))
        with self.assertRaises(EmbedderError):
            embedder.embed({'p': 2}, g, narrow, seed=0)
        with self.assertRaises(EmbedderError):
            embedder.embed({'p': 2, 'ridge': -1.}, g, g, seed=0)


class TestEmbedderSpec(unittest.TestCase):

    def test_from_string(self):
        self.assertIn('builtin-spectral', EMBEDDER_REGISTRY)
        spec = EmbedderSpec.from_string('builtin', timeout=10.)
        self.assertEqual(spec.kind, 'builtin-spectral')
        self.assertIsInstance(build_embedder(spec), BuiltinSpectralEmbedder)
        spec = EmbedderSpec.from_string('embed {train_edges} {test_edges} {out}', timeout=10.)
        self.assertEqual(spec.to_dict(), {
            'kind': 'external-command',
            'params': {'command': 'embed {train_edges} {test_edges} {out}', 'timeout': 10.},
        })

    def test_missing_placeholder(self):
        with self.assertRaises(EmbedderError):
            ExternalCommandEmbedder('embed {train_edges} {out}')


class TestExternalCommandEmbedder(unittest.TestCase):

    def _embedder(self, scratch, status=0, rows=-1):
        script = os.path.join(scratch, 'embed.py')
        with open(script, 'w') as f:
            f.write(EMBED_SCRIPT)
        command = '{} {} {{test_features}} {{out}} {} {} {{train_edges}} {{test_edges}}'.format(
            shlex.quote(sys.executable), shlex.quote(script), status, rows)
        return ExternalCommandEmbedder(command, timeout=60., scratch_dir=scratch)

    def test_identity_command(self):
        g_train, g_test = small_graph(seed=1), small_graph(n=80, seed=2)
        with tempfile.TemporaryDirectory('test_embedders') as scratch:
            H = self._embedder(scratch).embed({'p': 2}, g_train, g_test, seed=3)
        self.assertEqual(H.shape, g_test.features.shape)
        self.assertTrue(np.allclose(np.asarray(H), g_test.features))

    def test_failing_command(self):
        g = small_graph(n=40)
        with tempfile.TemporaryDirectory('test_embedders') as scratch:
            with self.assertRaises(EmbedderError) as ctx:
                self._embedder(scratch, status=1).embed({}, g, g, seed=0)
            self.assertIn('boom', str(ctx.exception))

    def test_wrong_row_count(self):
        g = small_graph(n=40)
        with tempfile.TemporaryDirectory('test_embedders') as scratch:
            with self.assertRaises(EmbedderError):
                self._embedder(scratch, rows=10).embed({}, g, g, seed=0)


if __name__ == '__main__':
    unittest.main()
