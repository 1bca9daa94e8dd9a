# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import json
import logging
import os
import shlex
import subprocess
import tempfile

from lobstur.data import graph_io
from lobstur.errors import DataError, EmbedderError
from lobstur.metrics import EmbeddingMatrix
from . import LobsturEmbedder, register_embedder


logger = logging.getLogger(__name__)

REQUIRED_PLACEHOLDERS = ('{train_edges}', '{test_edges}', '{out}')
OPTIONAL_PLACEHOLDERS = ('{train_features}', '{test_features}', '{theta}', '{seed}')

DEFAULT_TIMEOUT = 3600.


@register_embedder('external-command')
class ExternalCommandEmbedder(LobsturEmbedder):
    """Runs a user command that trains on one graph and embeds another.

    The command template is split like a shell command line and every token
    has its placeholders substituted: ``{train_edges}``, ``{test_edges}`` and
    ``{out}`` are required; ``{train_features}``, ``{test_features}``,
    ``{theta}`` (a JSON file) and ``{seed}`` are optional. The command must
    write an ``n_test x p`` comma-separated matrix to ``{out}``.

    Args:
        command (str): command template
        timeout (float, optional): seconds before the command is killed.
            Default: ``3600``
        scratch_dir (str, optional): parent of the per-call scratch directories
    """

    def __init__(self, command, timeout=DEFAULT_TIMEOUT, scratch_dir=None):
        missing = [p for p in REQUIRED_PLACEHOLDERS if p not in command]
        if missing:
            raise EmbedderError('embedder command lacks placeholder(s) {}'.format(', '.join(missing)))
        self.command = command
        self.timeout = float(timeout)
        self.scratch_dir = scratch_dir
        self.tokens = shlex.split(command)

    def _substitute(self, values):
        args = []
        for token in self.tokens:
            for name, value in values.items():
                token = token.replace('{' + name + '}', value)
            args.append(token)
        return args

    def embed(self, theta, g_train, g_test, seed):
        with tempfile.TemporaryDirectory(prefix='lobstur-embed-', dir=self.scratch_dir) as scratch:
            values = {}
            for split, g in (('train', g_train), ('test', g_test)):
                edges = os.path.join(scratch, '{}_edges.txt'.format(split))
                features = os.path.join(scratch, '{}_features.csv'.format(split))
                graph_io.save_graph(g, edges, features)
                values[split + '_edges'] = edges
                values[split + '_features'] = features if g.features is not None else ''
            values['theta'] = os.path.join(scratch, 'theta.json')
            with open(values['theta'], 'w') as f:
                json.dump(theta, f, sort_keys=True)
            values['seed'] = str(seed)
            values['out'] = os.path.join(scratch, 'embedding.csv')

            args = self._substitute(values)
            logger.debug('running embedder: %s', ' '.join(shlex.quote(a) for a in args))
            try:
                proc = subprocess.run(args, stdout=subprocess.PIPE, stderr=subprocess.PIPE, timeout=self.timeout)
            except subprocess.TimeoutExpired:
                raise EmbedderError('embedder timed out after {:g}s'.format(self.timeout))
            except OSError as e:
                raise EmbedderError('cannot run embedder: {}'.format(e))
            if proc.returncode != 0:
                tail = proc.stderr.decode('utf-8', 'replace').strip().splitlines()[-5:]
                raise EmbedderError('embedder exited with status {}: {}'.format(proc.returncode, ' / '.join(tail)))
            if not os.path.exists(values['out']):
                raise EmbedderError('embedder wrote no output to {}'.format(values['out']))
            try:
                H = graph_io.load_matrix(values['out'])
            except DataError as e:
                raise EmbedderError('malformed embedder output: {}'.format(e))
        if H.shape[0] != g_test.num_nodes:
            raise EmbedderError('embedder returned {} rows for a {}-node test graph'.format(H.shape[0], g_test.num_nodes))
        try:
            return EmbeddingMatrix(H)
        except DataError as e:
            raise EmbedderError('malformed embedder output: {}'.format(e))

    def embed_many(self, theta, g_train, tests, seed):
        return [self.embed(theta, g_train, g_test, seed) for g_test in tests]

    def config(self):
        return {'command': self.command, 'timeout': self.timeout}
