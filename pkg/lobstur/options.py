# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import argparse

from lobstur.errors import UsageError
from lobstur.graphon import SCENARIO_REGISTRY
from lobstur.metrics import METRIC_REGISTRY
from lobstur.progress_bar import LOG_FORMATS
from lobstur.samplers import SAMPLER_REGISTRY
from lobstur.samplers.local_bootstrap import LocalBootstrapSampler
from lobstur.tuner import PAIRINGS, SCREEN_METRICS


class ArgumentParser(argparse.ArgumentParser):
    """An argparse parser that raises :class:`UsageError` instead of exiting."""

    def error(self, message):
        raise UsageError('{}: {}'.format(self.prog, message))


def get_synth_parser():
    parser = get_parser('synth', 'Sample an attributed graph from a graphon preset')
    add_synth_args(parser)
    add_output_args(parser, directory=True)
    return parser


def get_bootstrap_parser(default_sampler='local'):
    parser = get_parser('bootstrap', 'Generate bootstrap replicas of a graph')
    add_graph_args(parser)
    group = parser.add_argument_group('Replica generation')
    group.add_argument('--sampler', default=default_sampler, choices=sorted(SAMPLER_REGISTRY.keys()),
                       help='replica generator')
    group.add_argument('--count', type=int, default=100, metavar='N',
                       help='number of replicas')
    add_output_args(parser, directory=True)
    return parser


def get_stats_parser():
    parser = get_parser('stats', 'Graph statistics of a graph and its replicas')
    add_graph_args(parser, latents=False)
    parser.add_argument('--replicas-dir', metavar='DIR',
                        help='directory of replica subdirectories written by bootstrap')
    add_output_args(parser, directory=False, required=False)
    return parser


def get_metrics_parser():
    parser = get_parser('metrics', 'Compare embeddings and score dimensional collapse')
    group = parser.add_argument_group('Embeddings')
    group.add_argument('--a', required=True, metavar='FILE', help='first embedding (CSV matrix)')
    group.add_argument('--b', metavar='FILE', help='second embedding (CSV matrix)')
    group.add_argument('--which', default='cca,stable_rank', metavar='LIST',
                       help='comma separated metrics: ' + ', '.join(e.name for e in METRIC_REGISTRY.values()))
    group.add_argument('--r', type=int, metavar='N', help='number of CCA components')
    group.add_argument('--ridge', type=float, metavar='R', help='CCA covariance regularization')
    group.add_argument('--eps', type=float, default=1e-12, metavar='E', help='RankMe smoothing')
    group.add_argument('--neighbors', dest='m', type=int, default=10, metavar='M',
                       help='neighborhood size of neighbor_kept_ratio')
    group.add_argument('--clusters', type=int, default=2, metavar='K',
                       help='number of k-means clusters of label_matching')
    add_output_args(parser, directory=False, required=False)
    return parser


def get_tune_parser():
    parser = get_parser('tune', 'Select embedder hyperparameters on bootstrap replicas')
    add_graph_args(parser)
    add_tuning_args(parser)
    group = parser.add_argument_group('Replica generation')
    LocalBootstrapSampler.add_args(group)
    add_output_args(parser, directory=False, required=True)
    return parser


def parse_args_and_sampler(parser, input_args=None):
    # The parser doesn't know about sampler-specific args, so we parse twice.
    # First we parse the sampler, then we parse a second time after adding
    # the sampler-specific arguments.
    args, _ = parser.parse_known_args(input_args)
    if hasattr(args, 'sampler'):
        group = parser.add_argument_group('Sampler-specific configuration')
        SAMPLER_REGISTRY[args.sampler].add_args(group)
    args = parser.parse_args(input_args)

    if hasattr(args, 'which'):
        args.which = [w.strip() for w in args.which.split(',') if w.strip()]
    return args


def get_parser(prog, desc):
    parser = ArgumentParser(prog='lobstur ' + prog, description=desc)
    parser.add_argument('--no-progress-bar', action='store_true', help='disable progress bar')
    parser.add_argument('--log-interval', type=int, default=10, metavar='N',
                        help='log progress every N items (when progress bar is disabled)')
    parser.add_argument('--log-format', default=None, help='log format to use',
                        choices=LOG_FORMATS)
    parser.add_argument('--seed', default=1, type=int, metavar='N',
                        help='base seed; fully determines all builtin outputs')
    parser.add_argument('--num-workers', type=int, default=None, metavar='N',
                        help='parallel workers (capped by LOBSTUR_THREADS)')
    return parser


def add_graph_args(parser, latents=True):
    group = parser.add_argument_group('Input graph')
    group.add_argument('--graph', required=True, metavar='PATH',
                       help='graph directory (edges.txt, features.csv) or edge list file')
    group.add_argument('--features', metavar='FILE',
                       help='feature matrix (overrides features.csv of a graph directory)')
    if latents:
        group.add_argument('--latents', metavar='FILE',
                           help='latent positions for oracle kNN graphs (default: latents.csv of the graph directory)')
    return group


def add_synth_args(parser):
    group = parser.add_argument_group('Graphon model')
    group.add_argument('--scenario', required=True, choices=list(SCENARIO_REGISTRY.keys()),
                       help='graphon preset')
    group.add_argument('--n', type=int, required=True, metavar='N', help='number of nodes')
    group.add_argument('--eta', type=float, default=None, metavar='ETA',
                       help='frequency of the cosine preset')
    group.add_argument('--sparsity', default=None, metavar='RHO',
                       help='sparsity factor in (0, 1] or "log" for log(n)/n')
    group.add_argument('--noise-sigma', type=float, default=None, metavar='S',
                       help='standard deviation of the feature noise')
    group.add_argument('--num-features', type=int, default=None, metavar='P',
                       help='feature dimension of presets 1-4 and cosine')
    return group


def add_tuning_args(parser):
    group = parser.add_argument_group('Hyperparameter tuning')
    group.add_argument('--grid', required=True, metavar='FILE',
                       help='JSON grid: a list of settings or an object of value lists')
    group.add_argument('--n-b', type=int, default=20, metavar='N',
                       help='number of model pairs (3 * N replicas are drawn)')
    group.add_argument('--threshold', type=float, default=2., metavar='T',
                       help='minimum mean stable rank of the evaluation embeddings')
    group.add_argument('--screen-metric', default='stable_rank', choices=SCREEN_METRICS,
                       help='collapse metric compared against --threshold')
    group.add_argument('--pairing', default='disjoint', choices=PAIRINGS,
                       help='which trained models are compared')
    group.add_argument('--embedder', default='builtin', metavar='CMD',
                       help='"builtin" or a command template with {train_edges} {test_edges} {out}')
    group.add_argument('--embed-timeout', type=float, default=3600., metavar='SEC',
                       help='timeout of one external embedder call')
    return group


def add_output_args(parser, directory=True, required=True):
    group = parser.add_argument_group('Output')
    if directory:
        group.add_argument('--out-dir', required=required, metavar='DIR',
                           help='output directory (replaced atomically)')
    else:
        group.add_argument('--out', required=required, metavar='FILE',
                           help='JSON report (printed to stdout if omitted)')
    return group
