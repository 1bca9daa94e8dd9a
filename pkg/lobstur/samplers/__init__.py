# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import argparse
import importlib
import os
from concurrent.futures import ProcessPoolExecutor

from lobstur.data.data_utils import derive_seed
from .graph_sampler import GraphSampler


SAMPLER_REGISTRY = {}
SAMPLER_CLASS_NAMES = set()


def setup_sampler(args, graph, latents=None):
    return SAMPLER_REGISTRY[args.sampler].setup_sampler(args, graph, latents=latents)


def register_sampler(name):
    """
    New replica generators can be added to lobstur with the
    :func:`~lobstur.samplers.register_sampler` function decorator.

    For example::

        @register_sampler('node-drop')
        class NodeDropSampler(GraphSampler):
            (...)

    .. note::

        All samplers must implement the :class:`~lobstur.samplers.GraphSampler`
        interface.

    Args:
        name (str): the name of the sampler
    """

    def register_sampler_cls(cls):
        if name in SAMPLER_REGISTRY:
            raise ValueError('Cannot register duplicate sampler ({})'.format(name))
        if not issubclass(cls, GraphSampler):
            raise ValueError('Sampler ({}: {}) must extend GraphSampler'.format(name, cls.__name__))
        if cls.__name__ in SAMPLER_CLASS_NAMES:
            raise ValueError('Cannot register sampler with duplicate class name ({})'.format(cls.__name__))
        SAMPLER_REGISTRY[name] = cls
        SAMPLER_CLASS_NAMES.add(cls.__name__)
        return cls

    return register_sampler_cls


def replica_seeds(seed, count):
    """Seed of replica ``i`` is ``derive_seed(seed, i)``."""
    return [derive_seed(seed, i) for i in range(count)]


def generate_replicas(sampler, count, seed, num_workers=1, wrap=None):
    """Draw *count* replicas from *sampler*.

    Replica ``i`` only depends on ``derive_seed(seed, i)``, so the result is
    the same for any *num_workers*.

    Args:
        sampler (GraphSampler): a set-up sampler
        count (int): number of replicas
        seed (int): base seed
        num_workers (int, optional): worker processes. Default: ``1``
        wrap (callable, optional): wraps the iterator of finished replicas,
            e.g. a progress bar
    """
    if count < 1:
        raise ValueError('count must be positive, got {}'.format(count))
    seeds = replica_seeds(seed, count)
    if num_workers <= 1:
        results = (sampler.sample(s) for s in seeds)
        return list(wrap(results) if wrap is not None else results)
    with ProcessPoolExecutor(max_workers=num_workers) as pool:
        results = pool.map(sampler.sample, seeds)
        return list(wrap(results) if wrap is not None else results)


# automatically import any Python files in the samplers/ directory
for file in os.listdir(os.path.dirname(__file__)):
    if file.endswith('.py') and not file.startswith('_'):
        sampler_name = file[:file.find('.py')]
        importlib.import_module('lobstur.samplers.' + sampler_name)

# expose `<name>_parser` for documentation
for sampler_name, sampler_cls in SAMPLER_REGISTRY.items():
    parser = argparse.ArgumentParser(add_help=False)
    group_sampler = parser.add_argument_group('Sampler name')
    group_sampler.add_argument(
        '--sampler', metavar=sampler_name,
        help='Enable this sampler with: ``--sampler=' + sampler_name + '``'
    )
    group_args = parser.add_argument_group('Additional command-line arguments')
    sampler_cls.add_args(group_args)
    globals()[sampler_name.replace('-', '_') + '_parser'] = parser
