# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

from collections import OrderedDict, namedtuple
import importlib
import inspect
import os

from lobstur.errors import UsageError


METRIC_REGISTRY = OrderedDict()

MetricEntry = namedtuple('MetricEntry', ['name', 'fn', 'pairwise'])


def _key(name):
    return name.lower().replace('_', '').replace('-', '')


def register_metric(name, pairwise=False):
    """
    New metrics can be added to lobstur with the
    :func:`~lobstur.metrics.register_metric` function decorator.

    For example::

        @register_metric('stable_rank')
        def stable_rank(H):
            (...)

    Names are matched ignoring case, ``_`` and ``-``, so ``stablerank`` and
    ``stable-rank`` select the same metric.

    Args:
        name (str): the name of the metric
        pairwise (bool): the metric compares two embeddings instead of
            scoring one
    """

    def register_metric_fn(fn):
        if _key(name) in METRIC_REGISTRY:
            raise ValueError('Cannot register duplicate metric ({})'.format(name))
        METRIC_REGISTRY[_key(name)] = MetricEntry(name, fn, pairwise)
        return fn

    return register_metric_fn


def get_metric(name):
    if _key(name) not in METRIC_REGISTRY:
        raise UsageError('unknown metric: {} (choose from {})'.format(
            name, ', '.join(e.name for e in METRIC_REGISTRY.values())))
    return METRIC_REGISTRY[_key(name)]


def _call(fn, *embeddings, **options):
    accepted = inspect.signature(fn).parameters
    return fn(*embeddings, **{k: v for k, v in options.items() if k in accepted and v is not None})


def evaluate_metrics(names, Ha, Hb=None, **options):
    """Evaluate the named metrics.

    Single-embedding metrics score *Ha* (and *Hb* if given, reported as
    ``{'a': ..., 'b': ...}``); pairwise metrics compare *Ha* with *Hb*.
    Options are forwarded to every metric that accepts them.
    """
    results = OrderedDict()
    for name in names:
        entry = get_metric(name)
        if entry.pairwise:
            if Hb is None:
                raise UsageError('metric {} needs two embeddings'.format(entry.name))
            results[entry.name] = _call(entry.fn, Ha, Hb, **options)
        elif Hb is None:
            results[entry.name] = _call(entry.fn, Ha, **options)
        else:
            results[entry.name] = OrderedDict([
                ('a', _call(entry.fn, Ha, **options)),
                ('b', _call(entry.fn, Hb, **options)),
            ])
    return results


from .embedding import EmbeddingMatrix, as_matrix  # noqa: E402

# automatically import any Python files in the metrics/ directory
for file in sorted(os.listdir(os.path.dirname(__file__))):
    if file.endswith('.py') and not file.startswith('_'):
        module = file[:file.find('.py')]
        importlib.import_module('lobstur.metrics.' + module)

from .cca import CcaResult, cca_alignment  # noqa: E402
from .spectral import coherence, pseudo_condition, rank_me, self_cluster, stable_rank  # noqa: E402
from .agreement import ari, kmeans, label_matching, neighbor_kept_ratio, nmi  # noqa: E402


__all__ = [
    'CcaResult',
    'EmbeddingMatrix',
    'ari',
    'as_matrix',
    'cca_alignment',
    'coherence',
    'evaluate_metrics',
    'get_metric',
    'kmeans',
    'label_matching',
    'neighbor_kept_ratio',
    'nmi',
    'pseudo_condition',
    'rank_me',
    'register_metric',
    'self_cluster',
    'stable_rank',
]
