#!/usr/bin/env python3 -u
# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Sample an attributed graph from a graphon preset.
"""

import os

from lobstur import graphon, options, utils
from lobstur.data import save_graph_dir
from lobstur.errors import UsageError


def build_model(args):
    kwargs = {}
    if args.sparsity is not None:
        if args.sparsity == 'log':
            kwargs['sparsity'] = 'log'
        else:
            try:
                kwargs['sparsity'] = float(args.sparsity)
            except ValueError:
                raise UsageError('--sparsity must be a number or "log", got {!r}'.format(args.sparsity))
    if args.noise_sigma is not None:
        kwargs['noise_sigma'] = args.noise_sigma
    if args.eta is not None:
        if args.scenario != 'cosine':
            raise UsageError('--eta only applies to --scenario cosine')
        kwargs['eta'] = args.eta
    if args.num_features is not None:
        if args.scenario == 'two-block':
            raise UsageError('--num-features does not apply to --scenario two-block')
        kwargs['num_features'] = args.num_features
    return graphon.scenario(args.scenario, **kwargs)


def main(args):
    print(args)
    model = build_model(args)
    g, latents = graphon.sample_graphon(model, args.n, args.seed)
    print('| sampled {} from scenario {}: {} nodes, {} edges'.format(model, args.scenario, g.num_nodes, g.num_edges))

    with utils.atomic_output_dir(args.out_dir) as staging:
        save_graph_dir(g, staging, latents)
        manifest = utils.build_manifest('synth', args, seed=args.seed)
        manifest['model'] = model.to_dict()
        manifest['graph_sha256'] = g.digest()
        utils.write_json(manifest, os.path.join(staging, utils.MANIFEST_FILE))
    print('| wrote {}'.format(args.out_dir))


def get_parser():
    return options.get_synth_parser()


if __name__ == '__main__':
    parser = get_parser()
    args = options.parse_args_and_sampler(parser)
    main(args)
