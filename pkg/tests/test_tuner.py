# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import json
import os
import tempfile
import unittest

import numpy as np

from lobstur import graphon
from lobstur.embedders import EmbedderSpec
from lobstur.errors import DataError, EmbedderError, UsageError
from lobstur.samplers.local_bootstrap import BootstrapConfig
from lobstur.tuner import HyperGrid, model_pairs, select_best, tune


def two_block_graph(n=400, seed=3):
    g, _ = graphon.sample_graphon(graphon.scenario('two-block'), n, seed)
    return g


class TestHyperGrid(unittest.TestCase):

    def test_cartesian_product(self):
        grid = HyperGrid.from_json({'p': [1, 8], 's': [0, 2]})
        self.assertEqual(grid.to_list(), [
            {'p': 1, 's': 0}, {'p': 1, 's': 2}, {'p': 8, 's': 0}, {'p': 8, 's': 2},
        ])

    def test_list_and_load(self):
        with tempfile.TemporaryDirectory('test_tuner') as data_dir:
            path = os.path.join(data_dir, 'grid.json')
            with open(path, 'w') as f:
                json.dump([{'p': 2}, {'p': 4}], f)
            grid = HyperGrid.load(path)
            self.assertEqual(len(grid), 2)
            self.assertEqual(grid[1]['p'], 4)
            with open(path, 'w') as f:
                f.write('{not json')
            with self.assertRaises(DataError):
                HyperGrid.load(path)

    def test_invalid_grids(self):
        with self.assertRaises(DataError):
            HyperGrid([])
        with self.assertRaises(DataError):
            HyperGrid([{'p': 1}, {'s': 2}])
        with self.assertRaises(DataError):
            HyperGrid.from_json(3)


class TestSelection(unittest.TestCase):

    def test_model_pairs(self):
        self.assertEqual(model_pairs(2), [(0, 2, 4), (1, 3, 5)])
        pairs = model_pairs(2, 'all-pairs')
        self.assertEqual(len(pairs), 6)
        self.assertTrue(all(4 <= t < 6 for _, _, t in pairs))
        with self.assertRaises(UsageError):
            model_pairs(2, 'random')

    def test_select_best(self):
        self.assertEqual(select_best([3., 1., 2.], [True, True, True]), 1)
        self.assertEqual(select_best([3., 1., 2.], [True, False, True]), 2)
        self.assertEqual(select_best([1., 1.], [True, True]), 0)
        self.assertIsNone(select_best([1., 2.], [False, False]))

    def test_select_best_ignores_order_of_ineligible(self):
        means = [5., None, 4.]
        self.assertEqual(select_best(means, [True, False, True]), 2)


class TestTune(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.g = two_block_graph()
        cls.cfg = BootstrapConfig(k=20, seed=11)
        cls.grid = HyperGrid.from_json({'p': [1, 8], 's': [0, 2]})
        cls.report = tune(cls.g, cls.grid, 2, 2., EmbedderSpec.from_string('builtin'), cls.cfg, num_workers=2)

    def test_collapsed_entries_are_screened(self):
        for entry in self.report.entries:
            if entry['theta']['p'] == 1:
                self.assertTrue(entry['screened_out'])
                self.assertEqual(entry['mean_stable_rank'], 1.)
            self.assertFalse(entry['failed'])
            self.assertEqual(len(entry['distances']), 2)
        self.assertEqual(self.report.selected_theta['p'], 8)

    def test_report_is_deterministic(self):
        again = tune(self.g, self.grid, 2, 2., EmbedderSpec.from_string('builtin'), self.cfg, num_workers=1)
        self.assertEqual(json.dumps(again.to_dict()), json.dumps(self.report.to_dict()))

    def test_report_schema(self):
        d = self.report.to_dict()
        self.assertEqual(d['n_b'], 2)
        self.assertEqual(len(d['replica_seeds']), 6)
        self.assertEqual(d['selected']['theta']['p'], 8)
        self.assertEqual(len(d['entries'][0]['embedding_digests']), 4)

    def test_nothing_passes(self):
        report = tune(self.g, HyperGrid([{'p': 1}]), 1, 2., EmbedderSpec.from_string('builtin'), self.cfg)
        self.assertIsNone(report.selected)
        self.assertIn('message', report.to_dict())

    def test_every_entry_fails(self):
        with self.assertRaises(EmbedderError):
            tune(self.g, HyperGrid([{'p': 1000}]), 1, 2., EmbedderSpec.from_string('builtin'), self.cfg)

    def test_rank_me_screen(self):
        report = tune(self.g, HyperGrid([{'p': 1}, {'p': 4}]), 1, 1.5, EmbedderSpec.from_string('builtin'),
                      self.cfg, screen_metric='rank_me', pairing='all-pairs')
        self.assertTrue(report.entries[0]['screened_out'])
        self.assertAlmostEqual(report.entries[0]['mean_rank_me'], 1., delta=1e-9)
        self.assertEqual(len(report.entries[1]['distances']), 1)

    def test_bad_arguments(self):
        spec = EmbedderSpec.from_string('builtin')
        with self.assertRaises(DataError):
            tune(self.g, self.grid, 0, 2., spec, self.cfg)
        with self.assertRaises(UsageError):
            tune(self.g, self.grid, 1, 2., spec, self.cfg, screen_metric='coherence')
        with self.assertRaises(DataError):
            tune(self.g, self.grid, 1, 2., spec, self.cfg, replicas=[self.g])


if __name__ == '__main__':
    unittest.main()
