# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Hyperparameter selection on bootstrap replicas.

``3 n_b`` replicas are drawn from the observed graph. For every grid entry
``theta`` one model is trained on each of the first ``2 n_b`` replicas;
paired models embed a held-out replica from the last ``n_b`` and the CCA
alignment of the two embeddings measures how much the learned representation
depends on the training sample. Entries whose embeddings collapse (mean
stable rank below a threshold) are screened out and the most stable
remaining entry is selected.
"""

from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
import itertools
import json
import logging

import numpy as np

from lobstur.data.data_utils import derive_seed
from lobstur.errors import DataError, EmbedderError, UsageError
from lobstur.metrics import cca_alignment, get_metric
from lobstur.samplers import replica_seeds
from lobstur.samplers.local_bootstrap import make_replicas


logger = logging.getLogger(__name__)

PAIRINGS = ('disjoint', 'all-pairs')
SCREEN_METRICS = ('stable_rank', 'rank_me')


class HyperGrid(object):
    """An ordered, non-empty list of hyperparameter settings with equal keys."""

    def __init__(self, entries):
        entries = [OrderedDict(e) for e in entries]
        if len(entries) == 0:
            raise DataError('the hyperparameter grid is empty')
        keys = set(entries[0])
        for i, e in enumerate(entries):
            if set(e) != keys:
                raise DataError('grid entry {} has keys {}, expected {}'.format(i, sorted(e), sorted(keys)))
        self.entries = entries

    @classmethod
    def from_json(cls, obj):
        """A list of flat maps, or a map of value lists expanded as a cartesian
        product in key order."""
        if isinstance(obj, dict):
            keys = list(obj)
            values = [v if isinstance(v, list) else [v] for v in obj.values()]
            return cls([OrderedDict(zip(keys, combo)) for combo in itertools.product(*values)])
        if isinstance(obj, list) and all(isinstance(e, dict) for e in obj):
            return cls(obj)
        raise DataError('a grid must be a list of objects or an object of lists')

    @classmethod
    def load(cls, path):
        with open(path, 'r') as f:
            try:
                obj = json.load(f, object_pairs_hook=OrderedDict)
            except ValueError as e:
                raise DataError('{}: invalid JSON: {}'.format(path, e))
        return cls.from_json(obj)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def to_list(self):
        return [dict(e) for e in self.entries]


def model_pairs(n_b, pairing='disjoint'):
    """``(model_a, model_b, test)`` replica index triples.

    ``disjoint`` pairs model ``i`` with model ``i + n_b`` on test replica
    ``i + 2 n_b``; ``all-pairs`` compares every two of the ``2 n_b`` models on
    test replica ``2 n_b + (a mod n_b)``.
    """
    if pairing == 'disjoint':
        return [(i, i + n_b, i + 2 * n_b) for i in range(n_b)]
    if pairing == 'all-pairs':
        return [(a, b, 2 * n_b + a % n_b) for a, b in itertools.combinations(range(2 * n_b), 2)]
    raise UsageError('unknown pairing: {}'.format(pairing))


def select_best(mean_distances, eligible):
    """Index of the smallest mean distance among eligible entries (first on ties), or None."""
    best = None
    for i, (d, ok) in enumerate(zip(mean_distances, eligible)):
        if ok and (best is None or d < mean_distances[best]):
            best = i
    return best


class TuningReport(object):
    """Per-entry distances, screening values and the selected entry."""

    def __init__(self, grid, entries, selected, threshold, n_b, settings):
        self.grid = grid
        self.entries = entries
        self.selected = selected
        self.threshold = threshold
        self.n_b = n_b
        self.settings = settings

    @property
    def selected_theta(self):
        return None if self.selected is None else self.grid[self.selected]

    def to_dict(self):
        report = OrderedDict()
        report['grid'] = self.grid.to_list()
        report['threshold'] = self.threshold
        report['n_b'] = self.n_b
        report.update(self.settings)
        report['entries'] = self.entries
        if self.selected is None:
            report['selected'] = None
            report['message'] = 'no grid entry passed the screen'
        else:
            report['selected'] = OrderedDict([('index', self.selected), ('theta', dict(self.grid[self.selected]))])
        return report


def _run_cell(embedder, theta, train_graph, tests, seed):
    try:
        return embedder.embed_many(theta, train_graph, tests, seed), None
    except (EmbedderError, DataError) as e:
        return None, str(e)


def tune(g, grid, n_b, t, embedder_spec, cfg, pairing='disjoint', screen_metric='stable_rank',
         num_workers=1, latents=None, wrap=None, replicas=None):
    """Select hyperparameters by bootstrap stability.

    Args:
        g (~lobstur.data.Graph): observed graph
        grid (HyperGrid): candidate settings
        n_b (int): number of model pairs
        t (float): screening threshold on the mean stable rank (or RankMe)
        embedder_spec (~lobstur.embedders.EmbedderSpec): embedder to tune
        cfg (~lobstur.samplers.local_bootstrap.BootstrapConfig): replica settings
        pairing (str, optional): ``disjoint`` or ``all-pairs``
        screen_metric (str, optional): ``stable_rank`` or ``rank_me``
        num_workers (int, optional): concurrent training cells
        latents (numpy.ndarray, optional): latents for oracle kNN graphs
        wrap (callable, optional): wraps the iterator of finished cells
        replicas (list, optional): precomputed ``3 n_b`` replicas

    Returns:
        TuningReport
    """
    if not isinstance(grid, HyperGrid):
        grid = HyperGrid(grid)
    if n_b < 1:
        raise DataError('n_b must be positive, got {}'.format(n_b))
    if screen_metric not in SCREEN_METRICS:
        raise UsageError('unknown screen metric: {}'.format(screen_metric))
    screen = get_metric(screen_metric).fn
    pairs = model_pairs(n_b, pairing)

    if replicas is None:
        replicas = make_replicas(g, 3 * n_b, cfg, latents=latents)
    if len(replicas) != 3 * n_b:
        raise DataError('expected {} replicas, got {}'.format(3 * n_b, len(replicas)))

    # tests each model embeds, in first-use order
    tests_of = OrderedDict((m, []) for m in range(2 * n_b))
    for a, b, test in pairs:
        for m in (a, b):
            if test not in tests_of[m]:
                tests_of[m].append(test)

    embedder = embedder_spec.build()
    cells = [(ti, m) for ti in range(len(grid)) for m in tests_of]

    def run(cell):
        ti, m = cell
        seed = derive_seed(cfg.seed, 'model', ti, m)
        return _run_cell(embedder, grid[ti], replicas[m], [replicas[x] for x in tests_of[m]], seed)

    with ThreadPoolExecutor(max_workers=max(1, num_workers)) as pool:
        results = pool.map(run, cells)
        if wrap is not None:
            results = wrap(results)
        results = list(results)

    embeddings = {}
    failures = {ti: [] for ti in range(len(grid))}
    for (ti, m), (embs, error) in zip(cells, results):
        if error is not None:
            failures[ti].append(OrderedDict([('model', m), ('error', error)]))
            logger.warning('grid entry %d, model %d failed: %s', ti, m, error)
            continue
        for test, emb in zip(tests_of[m], embs):
            embeddings[ti, m, test] = emb

    entries, means, eligible = [], [], []
    for ti, theta in enumerate(grid):
        entry = OrderedDict([('index', ti), ('theta', dict(theta))])
        distances, screen_values = [], []
        if not failures[ti]:
            try:
                for a, b, test in pairs:
                    ha, hb = embeddings[ti, a, test], embeddings[ti, b, test]
                    distances.append(cca_alignment(ha, hb).alignment)
                for key in sorted(k for k in embeddings if k[0] == ti):
                    screen_values.append(screen(embeddings[key]))
            except DataError as e:
                failures[ti].append(OrderedDict([('model', None), ('error', str(e))]))
        failed = len(failures[ti]) > 0
        mean_distance = float(np.mean(distances)) if distances and not failed else None
        screen_mean = float(np.mean(screen_values)) if screen_values and not failed else None
        passed = not failed and screen_mean >= t
        entry['distances'] = distances if not failed else []
        entry['mean_distance'] = mean_distance
        entry['mean_' + screen_metric] = screen_mean
        entry['screened_out'] = not failed and not passed
        entry['failed'] = failed
        entry['failures'] = failures[ti]
        digests = OrderedDict()
        for key in sorted(k for k in embeddings if k[0] == ti):
            digests['{}:{}'.format(key[1], key[2])] = embeddings[key].digest()
        entry['embedding_digests'] = digests
        entries.append(entry)
        means.append(mean_distance)
        eligible.append(passed)

    if all(failures[ti] for ti in range(len(grid))):
        raise EmbedderError('every grid entry failed; first error: {}'.format(failures[0][0]['error']))

    selected = select_best(means, eligible)
    if selected is None:
        logger.warning('no grid entry passed the %s >= %g screen', screen_metric, t)

    settings = OrderedDict([
        ('pairing', pairing),
        ('screen_metric', screen_metric),
        ('seed', cfg.seed),
        ('replica_seeds', replica_seeds(cfg.seed, 3 * n_b)),
        ('embedder', embedder_spec.to_dict()),
        ('bootstrap', cfg.to_dict()),
    ])
    return TuningReport(grid, entries, selected, t, n_b, settings)
