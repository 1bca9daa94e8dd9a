# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import unittest

import numpy as np
from scipy import stats

from lobstur import graphon
from lobstur.data import Graph, KnnGraph, knn_from_source
from lobstur.data.data_utils import make_rng
from lobstur.errors import DataError


def constant_model(value, sparsity=1., noise_sigma=0.):
    return graphon.GraphonModel(
        lambda u, v: np.full(np.broadcast(u, v).shape, value),
        lambda u: np.asarray(u)[:, None],
        sparsity=sparsity, noise_sigma=noise_sigma,
    )


class TestGraphonModel(unittest.TestCase):

    def test_presets(self):
        for name in ('1', '2', '3', '4', 'cosine'):
            model = graphon.scenario(name, num_features=3)
            self.assertEqual(model.name, name)
            self.assertEqual(model.feature_map(np.array([.2, .4])).shape, (2, 3))
        model = graphon.scenario('two-block')
        self.assertEqual(model.feature_map(np.array([.1, .9])).shape, (2, 17))
        self.assertAlmostEqual(model.edge_probability(.1, .9, 100), 0.1 * 0.05)
        self.assertAlmostEqual(model.edge_probability(.1, .2, 100), 0.1 * 0.8)
        self.assertEqual(graphon.scenario(2).name, '2')
        with self.assertRaises(DataError):
            graphon.scenario('5')

    def test_kernel_values(self):
        m2 = graphon.scenario('2')
        self.assertAlmostEqual(float(m2.kernel(.2, .7)), .5)
        m1 = graphon.scenario('1')
        self.assertEqual(float(m1.kernel(.5, .505)), 1.)
        self.assertEqual(float(m1.kernel(.5, .52)), 0.)
        cos = graphon.scenario('cosine', eta=2.)
        self.assertAlmostEqual(float(cos.kernel(.3, .3)), 1.)
        self.assertAlmostEqual(float(cos.kernel(0., .5)), 0.)

    def test_validation(self):
        with self.assertRaises(DataError):
            constant_model(.5, sparsity=0.)
        with self.assertRaises(DataError):
            constant_model(2.)
        with self.assertRaises(DataError):
            graphon.GraphonModel(lambda u, v: np.clip(u - v, 0, 1), lambda u: np.asarray(u)[:, None])

    def test_log_sparsity(self):
        model = graphon.scenario('2', sparsity='log')
        self.assertAlmostEqual(model.rho(1000), np.log(1000) / 1000)

    def test_duplicate_scenario(self):
        with self.assertRaises(ValueError):
            graphon.register_scenario('2')(lambda: None)


class TestSampleGraphon(unittest.TestCase):

    def test_trivial_kernels(self):
        empty, _ = graphon.sample_graphon(constant_model(0.), 30, seed=1)
        self.assertEqual(empty.num_edges, 0)
        full, _ = graphon.sample_graphon(constant_model(1.), 30, seed=1)
        self.assertEqual(full.num_edges, 30 * 29 // 2)

    def test_noise_free_features_follow_latents(self):
        g, latents = graphon.sample_graphon(constant_model(.1), 50, seed=3)
        self.assertTrue(np.array_equal(g.features[:, 0], latents))
        self.assertTrue(np.all((latents >= 0) & (latents < 1)))

    def test_deterministic(self):
        model = graphon.scenario('2', num_features=4)
        g1, u1 = graphon.sample_graphon(model, 200, seed=7)
        g2, u2 = graphon.sample_graphon(model, 200, seed=7)
        g3, _ = graphon.sample_graphon(model, 200, seed=8)
        self.assertEqual(g1, g2)
        self.assertTrue(np.array_equal(u1, u2))
        self.assertNotEqual(g1.digest(), g3.digest())

    def test_edge_count_matches_bernoulli_law(self):
        # fixed latents, edge counts over seeds ~ sum of Bernoulli(rho W)
        model = graphon.scenario('2', sparsity=.05, num_features=1)
        latents = make_rng(0, 'test').random(120)
        iu = np.triu_indices(120, k=1)
        p = model.edge_probability(latents[iu[0]], latents[iu[1]], 120)
        mean, var = p.sum(), (p * (1 - p)).sum()
        counts = [graphon.sample_from_latents(model, latents, seed).num_edges for seed in range(60)]
        z = (np.mean(counts) - mean) / np.sqrt(var / len(counts))
        self.assertLess(abs(z), 4.)

    def test_pair_frequencies_chi_square(self):
        model = graphon.GraphonModel(
            lambda u, v: np.where((np.asarray(u) < .5) == (np.asarray(v) < .5), .6, .2),
            lambda u: np.asarray(u)[:, None], sparsity=1., noise_sigma=0.,
        )
        latents = np.array([.1, .2, .3, .7, .8, .9])
        pairs = [(0, 1), (0, 3)]
        hits = np.zeros(2)
        trials = 400
        for seed in range(trials):
            edges = graphon.sample_from_latents(model, latents, seed).edge_set()
            hits += [p in edges for p in pairs]
        expected = np.array([.6, .2]) * trials
        chi2 = (((hits - expected) ** 2) / (expected * (1 - np.array([.6, .2])))).sum()
        self.assertLess(chi2, stats.chi2.ppf(0.999, df=2))

    def test_features_noise_level(self):
        model = graphon.scenario('3', noise_sigma=.1, num_features=5)
        g, latents = graphon.sample_graphon(model, 400, seed=2)
        residual = g.features - 5. * latents[:, None]
        self.assertAlmostEqual(residual.std(), .1, delta=.01)

    def test_empty_graph_rejected(self):
        with self.assertRaises(DataError):
            graphon.sample_graphon(constant_model(.5), 0, seed=0)


class TestEdgeProbabilityEstimator(unittest.TestCase):

    def test_neighborhood_average(self):
        g = Graph(4, [(1, 3), (2, 3)])
        knn = KnnGraph(2, [[1, 2], [0, 2], [1, 3], [2, 1]], 'oracle-latent')
        self.assertEqual(graphon.estimate_edge_probability(g, knn, 0, 3), 1.)
        self.assertEqual(graphon.estimate_edge_probability(g, knn, 3, 0), 0.)
        self.assertEqual(graphon.estimate_edge_probability(g, knn, 2, 3), .5)
        pairs = np.array([[0, 3], [3, 0], [2, 3]])
        self.assertTrue(np.array_equal(graphon.estimate_edge_probabilities(g, knn, pairs), [1., 0., .5]))
        with self.assertRaises(DataError):
            graphon.estimate_edge_probability(g, knn, 1, 1)
        empty = KnnGraph(2, [[], [0], [1], [2]], 'oracle-latent')
        with self.assertRaises(DataError):
            graphon.estimate_edge_probability(g, empty, 0, 1)

    def test_error_shrinks_with_n(self):
        # oracle latent kNN with k = ceil(sqrt(n)); mean absolute error over
        # 1000 random pairs, averaged over 20 graphs per size
        model = graphon.scenario('2', sparsity=.01, num_features=1)
        sizes = (200, 500, 1000, 2000)
        errors = []
        for n in sizes:
            per_seed = []
            for seed in range(20):
                g, latents = graphon.sample_graphon(model, n, seed)
                knn = knn_from_source(g, 'oracle', int(np.ceil(np.sqrt(n))), latents=latents)
                pairs = make_rng(seed, 'pairs').integers(n, size=(1200, 2))
                pairs = pairs[pairs[:, 0] != pairs[:, 1]][:1000]
                self.assertEqual(len(pairs), 1000)
                truth = model.edge_probability(latents[pairs[:, 0]], latents[pairs[:, 1]], n)
                est = graphon.estimate_edge_probabilities(g, knn, pairs)
                per_seed.append(np.abs(est - truth).mean())
            errors.append(np.mean(per_seed))
        for smaller, larger in zip(errors, errors[1:]):
            self.assertLessEqual(larger, smaller)
        self.assertLess(errors[-1], errors[0])


if __name__ == '__main__':
    unittest.main()
