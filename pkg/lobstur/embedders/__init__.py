# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import importlib
import os

from lobstur.errors import UsageError
from .lobstur_embedder import LobsturEmbedder


EMBEDDER_REGISTRY = {}
EMBEDDER_CLASS_NAMES = set()


def register_embedder(name):
    """
    New embedders can be added to lobstur with the
    :func:`~lobstur.embedders.register_embedder` function decorator.

    For example::

        @register_embedder('builtin-spectral')
        class BuiltinSpectralEmbedder(LobsturEmbedder):
            (...)

    .. note:: All embedders must implement the :class:`LobsturEmbedder` interface.

    Args:
        name (str): the name of the embedder
    """

    def register_embedder_cls(cls):
        if name in EMBEDDER_REGISTRY:
            raise ValueError('Cannot register duplicate embedder ({})'.format(name))
        if not issubclass(cls, LobsturEmbedder):
            raise ValueError('Embedder ({}: {}) must extend LobsturEmbedder'.format(name, cls.__name__))
        if cls.__name__ in EMBEDDER_CLASS_NAMES:
            raise ValueError('Cannot register embedder with duplicate class name ({})'.format(cls.__name__))
        EMBEDDER_REGISTRY[name] = cls
        EMBEDDER_CLASS_NAMES.add(cls.__name__)
        return cls

    return register_embedder_cls


class EmbedderSpec(object):
    """Which embedder to run and with what fixed parameters.

    Args:
        kind (str): a registered embedder name, e.g. ``builtin-spectral`` or
            ``external-command``
        params (dict): constructor parameters of the embedder
    """

    def __init__(self, kind, params=None):
        if kind not in EMBEDDER_REGISTRY:
            raise UsageError('unknown embedder: {} (choose from {})'.format(kind, ', '.join(sorted(EMBEDDER_REGISTRY))))
        self.kind = kind
        self.params = dict(params or {})

    @classmethod
    def from_string(cls, value, **params):
        """``builtin`` selects the builtin embedder; anything else is a command template."""
        if value in ('builtin', 'builtin-spectral'):
            return cls('builtin-spectral', {k: v for k, v in params.items() if k != 'timeout'})
        params = {k: v for k, v in params.items() if k == 'timeout'}
        params['command'] = value
        return cls('external-command', params)

    def build(self):
        return EMBEDDER_REGISTRY[self.kind].build_embedder(self.params)

    def to_dict(self):
        return {'kind': self.kind, 'params': dict(self.params)}


def build_embedder(spec):
    return spec.build()


# automatically import any Python files in the embedders/ directory
for file in os.listdir(os.path.dirname(__file__)):
    if file.endswith('.py') and not file.startswith('_'):
        module = file[:file.find('.py')]
        importlib.import_module('lobstur.embedders.' + module)
