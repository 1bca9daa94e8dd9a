#!/usr/bin/env python3 -u
# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Select embedder hyperparameters by the stability of the learned embeddings
across bootstrap replicas.
"""

from lobstur import options, utils
from lobstur.embedders import EmbedderSpec
from lobstur.meters import StopwatchMeter
from lobstur.progress_bar import build_progress_bar
from lobstur.samplers.local_bootstrap import BootstrapConfig, make_replicas
from lobstur.tuner import HyperGrid, tune
from lobstur_cli import input_paths, load_input_graph


def main(args):
    print(args)
    g, latents = load_input_graph(args)
    grid = HyperGrid.load(args.grid)
    spec = EmbedderSpec.from_string(args.embedder, timeout=args.embed_timeout)
    cfg = BootstrapConfig.from_args(args)
    print('| {} grid entries, n_b = {}, embedder {}'.format(len(grid), args.n_b, spec.kind))

    timer = StopwatchMeter()
    with timer:
        replicas = make_replicas(
            g, 3 * args.n_b, cfg, latents=latents,
            wrap=lambda it: build_progress_bar(args, it, prefix='replicas', total=3 * args.n_b),
        )
        report = tune(
            g, grid, args.n_b, args.threshold, spec, cfg,
            pairing=args.pairing, screen_metric=args.screen_metric,
            num_workers=utils.num_workers(args.num_workers), latents=latents, replicas=replicas,
            wrap=lambda it: build_progress_bar(args, it, prefix='tune'),
        )
    for entry in report.entries:
        print('| theta {}: mean distance {}, mean {} {}{}'.format(
            entry['theta'], entry['mean_distance'], args.screen_metric, entry['mean_' + args.screen_metric],
            ' (failed)' if entry['failed'] else ' (screened out)' if entry['screened_out'] else ''))
    if report.selected is None:
        print('| no grid entry passed the screen (threshold {:g})'.format(args.threshold))
    else:
        print('| selected theta {} in {:.1f}s'.format(dict(report.selected_theta), timer.sum))

    inputs = input_paths(args)
    inputs['grid'] = args.grid
    with utils.atomic_output_files(args.out, args.out + '.manifest.json') as (out, manifest_out):
        utils.write_json(report.to_dict(), out)
        manifest = utils.build_manifest(
            'tune', args, seed=args.seed, derived_seeds=report.settings['replica_seeds'], inputs=inputs,
        )
        utils.write_json(manifest, manifest_out)
    print('| wrote {}'.format(args.out))


def get_parser():
    return options.get_tune_parser()


if __name__ == '__main__':
    parser = get_parser()
    args = options.parse_args_and_sampler(parser)
    main(args)
