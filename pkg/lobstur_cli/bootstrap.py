#!/usr/bin/env python3 -u
# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Generate bootstrap replicas of a graph.
"""

import os

from lobstur import options, samplers, utils
from lobstur.data import save_graph_dir
from lobstur.errors import UsageError
from lobstur.meters import StopwatchMeter
from lobstur.progress_bar import build_progress_bar
from lobstur_cli import input_paths, load_input_graph


def replica_dir_name(index, count):
    return 'replica_{:0{}d}'.format(index, len(str(count - 1)))


def main(args):
    if args.count < 1:
        raise UsageError('--count must be positive, got {}'.format(args.count))
    print(args)
    g, latents = load_input_graph(args)
    sampler = samplers.setup_sampler(args, g, latents=latents)
    workers = utils.num_workers(args.num_workers, default=1)

    timer = StopwatchMeter()
    with timer:
        replicas = samplers.generate_replicas(
            sampler, args.count, args.seed, num_workers=workers,
            wrap=lambda it: build_progress_bar(args, it, prefix='bootstrap', total=args.count),
        )
    mean_edges = sum(r.num_edges for r in replicas) / len(replicas)
    print('| generated {} {} replicas in {:.1f}s, mean edges {:.2f} (original {})'.format(
        len(replicas), args.sampler, timer.sum, mean_edges, g.num_edges))

    with utils.atomic_output_dir(args.out_dir) as staging:
        for i, replica in enumerate(replicas):
            save_graph_dir(replica, os.path.join(staging, replica_dir_name(i, args.count)))
        manifest = utils.build_manifest(
            'bootstrap', args, seed=args.seed,
            derived_seeds=samplers.replica_seeds(args.seed, args.count),
            inputs=input_paths(args),
        )
        manifest['sampler'] = args.sampler
        manifest['sampler_config'] = sampler.config()
        manifest['replicas'] = [
            {'dir': replica_dir_name(i, args.count), 'sha256': r.digest()} for i, r in enumerate(replicas)
        ]
        utils.write_json(manifest, os.path.join(staging, utils.MANIFEST_FILE))
    print('| wrote {}'.format(args.out_dir))


def get_parser():
    return options.get_bootstrap_parser()


if __name__ == '__main__':
    parser = get_parser()
    args = options.parse_args_and_sampler(parser)
    main(args)
