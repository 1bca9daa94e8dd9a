#!/usr/bin/env python3 -u
# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Compute graph statistics of a graph and compare them with its replicas.
"""

from collections import OrderedDict
import json
import os

from lobstur import options, utils
from lobstur.data import graph_io, load_graph_dir
from lobstur.errors import DataError
from lobstur.graph_stats import STAT_FIELDS, graph_stats, stats_report
from lobstur.progress_bar import build_progress_bar
from lobstur_cli import input_paths, load_input_graph


def load_replicas(replicas_dir):
    names = sorted(
        d for d in os.listdir(replicas_dir)
        if os.path.exists(os.path.join(replicas_dir, d, graph_io.EDGES_FILE))
    )
    if len(names) == 0:
        raise DataError('no replica directories with {} in {}'.format(graph_io.EDGES_FILE, replicas_dir))
    return [load_graph_dir(os.path.join(replicas_dir, name)) for name in names]


def main(args):
    print(args)
    g, _ = load_input_graph(args)
    if args.replicas_dir is not None:
        replicas = load_replicas(args.replicas_dir)
        print('| loaded {} replicas from {}'.format(len(replicas), args.replicas_dir))
        comparison = stats_report(
            g, replicas, num_workers=utils.num_workers(args.num_workers, default=1),
            wrap=lambda it: build_progress_bar(args, it, prefix='stats', total=len(replicas)),
        )
        report = comparison.to_dict()
        for field in ('num_edges', 'avg_degree', 'avg_clustering_coefficient'):
            print('| {}: original {:g}, replicas {:g} +- {:g}'.format(
                field, report[field]['original'], report[field]['mean'], report[field]['sd']))
    else:
        stats = graph_stats(g)
        report = OrderedDict((field, OrderedDict([('original', getattr(stats, field))])) for field in STAT_FIELDS)
        report['assortativity_degenerate'] = OrderedDict([('original', bool(stats.assortativity_degenerate))])

    if args.out is None:
        print(json.dumps(utils.to_json(report), indent=2))
        return
    inputs = input_paths(args)
    if args.replicas_dir is not None:
        inputs['replicas'] = args.replicas_dir
    with utils.atomic_output_files(args.out, args.out + '.manifest.json') as (out, manifest_out):
        utils.write_json(report, out)
        utils.write_json(utils.build_manifest('stats', args, seed=args.seed, inputs=inputs), manifest_out)
    print('| wrote {}'.format(args.out))


def get_parser():
    return options.get_stats_parser()


if __name__ == '__main__':
    parser = get_parser()
    args = options.parse_args_and_sampler(parser)
    main(args)
