#!/usr/bin/env python3 -u
# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Compare two embeddings (CCA alignment, neighborhood and label agreement) and
score dimensional collapse.
"""

import json

from lobstur import options, utils
from lobstur.data import load_matrix
from lobstur.metrics import EmbeddingMatrix, evaluate_metrics


def main(args):
    print(args)
    Ha = EmbeddingMatrix(load_matrix(args.a))
    Hb = EmbeddingMatrix(load_matrix(args.b)) if args.b is not None else None
    print('| embeddings: a {}{}'.format(Ha.shape, '' if Hb is None else ', b {}'.format(Hb.shape)))
    results = evaluate_metrics(
        args.which, Ha, Hb,
        r=args.r, ridge=args.ridge, eps=args.eps, m=args.m, clusters=args.clusters, seed=args.seed,
    )
    if args.out is None:
        print(json.dumps(utils.to_json(results), indent=2))
        return
    inputs = {'a': args.a, 'b': args.b}
    with utils.atomic_output_files(args.out, args.out + '.manifest.json') as (out, manifest_out):
        utils.write_json(results, out)
        utils.write_json(utils.build_manifest('metrics', args, seed=args.seed, inputs=inputs), manifest_out)
    print('| wrote {}'.format(args.out))


def get_parser():
    return options.get_metrics_parser()


if __name__ == '__main__':
    parser = get_parser()
    args = options.parse_args_and_sampler(parser)
    main(args)
