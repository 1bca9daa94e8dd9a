# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import argparse
import unittest

import numpy as np

from lobstur import graphon, samplers
from lobstur.data import knn_from_source
from lobstur.data.data_utils import derive_seed
from lobstur.errors import DataError
from lobstur.samplers.baselines import edge_drop, node_drop
from lobstur.samplers.local_bootstrap import (
    BootstrapConfig,
    LocalBootstrap,
    bootstrap_conditional,
    bootstrap_marginal,
    make_replicas,
)

from tests import utils as test_utils


def scenario_graph(n=500, seed=7, num_features=4):
    model = graphon.scenario('2', sparsity=.01, num_features=num_features)
    return graphon.sample_graphon(model, n, seed)


def sampler_args(**kwargs):
    args = argparse.Namespace(
        sampler='local', mode='conditional', solution=None, knn_for_features='graph',
        knn_for_edges='graph', k=20, rewiring='exact', graph_distance='shortest-path', seed=1,
    )
    for k, v in kwargs.items():
        setattr(args, k, v)
    return args


class TestBootstrapConfig(unittest.TestCase):

    def test_solutions(self):
        s1 = BootstrapConfig.solution(1, k=10)
        self.assertEqual((s1.knn_for_features, s1.knn_for_edges, s1.k), ('graph', 'feature', 10))
        s2 = BootstrapConfig.solution(2)
        self.assertEqual((s2.knn_for_features, s2.knn_for_edges), ('graph', 'graph'))
        with self.assertRaises(DataError):
            BootstrapConfig.solution(3)

    def test_validation(self):
        with self.assertRaises(DataError):
            BootstrapConfig(mode='joint')
        with self.assertRaises(DataError):
            BootstrapConfig(knn_for_edges='latent')
        with self.assertRaises(DataError):
            BootstrapConfig(k=0)
        with self.assertRaises(DataError):
            BootstrapConfig(rewiring='a3')

    def test_from_args_and_replace(self):
        cfg = BootstrapConfig.from_args(sampler_args(solution=1, k=5, seed=3))
        self.assertEqual(cfg, BootstrapConfig.solution(1, k=5, seed=3))
        self.assertEqual(cfg.replace(mode='marginal').mode, 'marginal')
        self.assertEqual(cfg.mode, 'conditional')


class TestLocalBootstrap(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.g, cls.latents = scenario_graph()

    def test_conditional_replica_shape(self):
        cfg = BootstrapConfig(k=20, seed=3)
        replica = bootstrap_conditional(self.g, cfg)
        self.assertEqual(replica.num_nodes, self.g.num_nodes)
        self.assertEqual(replica.features.shape, self.g.features.shape)
        self.assertTrue(np.all(replica.degrees() <= self.g.degrees()))
        self.assertTrue(np.all(replica.edges[:, 0] < replica.edges[:, 1]))

    def test_features_come_from_knn_neighborhood(self):
        cfg = BootstrapConfig(k=10, seed=5)
        knn = knn_from_source(self.g, 'graph', 10)
        replica = bootstrap_conditional(self.g, cfg)
        for i in range(self.g.num_nodes):
            allowed = [i] + knn[i].tolist()
            self.assertTrue(any(np.array_equal(replica.features[i], self.g.features[j]) for j in allowed))

    def test_marginal_features_follow_origins(self):
        cfg = BootstrapConfig(k=10, seed=11)
        knn = knn_from_source(self.g, 'graph', 10)
        replica = bootstrap_marginal(self.g, cfg)
        origins = LocalBootstrap(self.g, cfg.replace(mode='marginal')).draw_origins(11)
        self.assertEqual(replica.num_nodes, self.g.num_nodes)
        for j, o in enumerate(origins.tolist()):
            allowed = [o] + knn[o].tolist()
            self.assertTrue(any(np.array_equal(replica.features[j], self.g.features[m]) for m in allowed))
        stems = self.g.degrees()[origins]
        self.assertTrue(np.all(replica.degrees() <= stems))

    def test_edge_count_close_to_original(self):
        cfg = BootstrapConfig(k=20, seed=7)
        replicas = make_replicas(self.g, 40, cfg)
        ratio = np.mean([r.num_edges for r in replicas]) / self.g.num_edges
        # self pairs and duplicate pairs are discarded, never added
        self.assertGreaterEqual(ratio, .9)
        self.assertLessEqual(ratio, 1.)
        self.assertTrue(all(r.num_edges <= self.g.num_edges for r in replicas))

    def test_edge_count_grows_with_k(self):
        means = []
        for k in (5, 20, 50):
            replicas = make_replicas(self.g, 20, BootstrapConfig(k=k, seed=7))
            means.append(np.mean([r.num_edges for r in replicas]))
        self.assertLessEqual(means[0], means[1])
        # a larger neighborhood dilutes the self-pair weight deg(u), so k=50
        # keeps at least as many edges as k=20 and stays close to it
        self.assertGreaterEqual(means[2], .99 * means[1])
        self.assertLessEqual(means[2], 1.05 * means[1])
        self.assertLessEqual(means[2], self.g.num_edges)

    def test_node_drop_loses_mean_degree(self):
        original = 2. * self.g.num_edges / self.g.num_nodes

        def mean_degree(graphs):
            return np.mean([2. * h.num_edges / h.num_nodes for h in graphs])

        dropped = mean_degree([node_drop(self.g, .2, s) for s in range(100)])
        kept = mean_degree(make_replicas(self.g, 100, BootstrapConfig(k=20, seed=3)))
        self.assertLessEqual(dropped / original, .85)
        self.assertGreater(kept, dropped)

    def test_marginal_origin_multiplicity(self):
        sampler = LocalBootstrap(self.g, BootstrapConfig(k=10, mode='marginal', seed=1))
        n = self.g.num_nodes
        counts = np.zeros(n)
        num_seeds = 1000
        for seed in range(num_seeds):
            origins = sampler.draw_origins(derive_seed(1, seed))
            self.assertEqual(origins.shape, (n,))
            self.assertTrue(np.all((origins >= 0) & (origins < n)))
            counts += np.bincount(origins, minlength=n)
        # each node is drawn Binomial(n, 1/n) times per replica
        sd = np.sqrt((1. - 1. / n) / num_seeds)
        self.assertLess(abs(counts[0] / num_seeds - 1.), 3 * sd)
        self.assertLess(abs(counts[n // 2] / num_seeds - 1.), 3 * sd)
        self.assertAlmostEqual(counts.mean() / num_seeds, 1.)
        conditional = LocalBootstrap(self.g, BootstrapConfig(k=10, seed=1))
        self.assertTrue(np.array_equal(conditional.draw_origins(5), np.arange(n)))

    def test_solution_one_and_approx(self):
        for cfg in (BootstrapConfig.solution(1, k=10, seed=2), BootstrapConfig(k=10, rewiring='approx-a2', seed=2)):
            replica = bootstrap_conditional(self.g, cfg)
            self.assertEqual(replica.num_nodes, self.g.num_nodes)
            self.assertGreater(replica.num_edges, 0)

    def test_oracle_knn(self):
        cfg = BootstrapConfig(knn_for_features='oracle', knn_for_edges='oracle', k=10, seed=4)
        replica = bootstrap_conditional(self.g, cfg, latents=self.latents)
        self.assertEqual(replica.num_nodes, self.g.num_nodes)
        with self.assertRaises(DataError):
            bootstrap_conditional(self.g, cfg)


class TestReplicaGeneration(unittest.TestCase):

    def test_replicas_are_deterministic(self):
        g, _ = scenario_graph(n=150, seed=1)
        cfg = BootstrapConfig(k=10, seed=9)
        a = make_replicas(g, 4, cfg)
        b = make_replicas(g, 4, cfg)
        self.assertEqual([r.digest() for r in a], [r.digest() for r in b])
        self.assertNotEqual(a[0].digest(), a[1].digest())
        # replica i only depends on derive_seed(seed, i)
        self.assertEqual(a[2], LocalBootstrap(g, cfg).sample(derive_seed(9, 2)))

    def test_worker_count_does_not_matter(self):
        g, _ = scenario_graph(n=120, seed=2)
        cfg = BootstrapConfig(mode='marginal', k=8, seed=1)
        serial = make_replicas(g, 3, cfg, num_workers=1)
        parallel = make_replicas(g, 3, cfg, num_workers=2)
        self.assertEqual(serial, parallel)

    def test_graph_without_features(self):
        g = test_utils.random_graph(40, .1, seed=3)
        replica = bootstrap_conditional(g, BootstrapConfig(k=5, seed=1))
        self.assertIsNone(replica.features)

    def test_registered_samplers(self):
        self.assertTrue({'local', 'node-drop', 'edge-drop', 'network', 'block'} <= set(samplers.SAMPLER_REGISTRY))
        g, latents = scenario_graph(n=100, seed=3)
        sampler = samplers.setup_sampler(sampler_args(k=5, mode='marginal'), g, latents=latents)
        self.assertEqual(sampler.config()['mode'], 'marginal')
        self.assertEqual(sampler.sample(1), sampler.sample(1))

    def test_edge_drop_keeps_nodes(self):
        g = test_utils.random_graph(30, .3, seed=1, num_features=2)
        h = edge_drop(g, .5, seed=2)
        self.assertEqual(h.num_nodes, g.num_nodes)
        self.assertTrue(h.edge_set() <= g.edge_set())
        self.assertEqual(edge_drop(g, 0., seed=2), g)

    def test_node_drop_compacts_ids(self):
        g = test_utils.path_graph(10, features=np.arange(10.))
        h = node_drop(g, .5, seed=4)
        self.assertEqual(h.features.shape[0], h.num_nodes)
        self.assertTrue(np.all(np.diff(h.features[:, 0]) > 0))
        if h.num_edges > 0:
            self.assertLess(int(h.edges.max()), h.num_nodes)
        with self.assertRaises(DataError):
            node_drop(g, 1., seed=0)


if __name__ == '__main__':
    unittest.main()
