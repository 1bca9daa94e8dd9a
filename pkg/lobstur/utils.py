# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

from collections import OrderedDict
import contextlib
import hashlib
import json
import logging
import os
import shutil
import tempfile

import numpy as np


logger = logging.getLogger(__name__)

MANIFEST_FILE = 'manifest.json'


def num_workers(requested=None, default=None):
    """Resolve a worker count: *requested*, else *default*, else the number
    of logical CPUs, capped by the ``LOBSTUR_THREADS`` environment variable."""
    count = requested or default or os.cpu_count() or 1
    cap = os.environ.get('LOBSTUR_THREADS')
    if cap:
        try:
            count = min(count, max(1, int(cap)))
        except ValueError:
            logger.error('ignoring invalid LOBSTUR_THREADS=%r', cap)
    return max(1, int(count))


def file_digest(path):
    """sha256 of a file, or of every file in a directory (sorted by relative path)."""
    h = hashlib.sha256()
    if os.path.isdir(path):
        for root, dirs, files in os.walk(path):
            dirs.sort()
            for name in sorted(files):
                full = os.path.join(root, name)
                h.update(os.path.relpath(full, path).encode('utf-8'))
                h.update(file_digest(full).encode('ascii'))
        return h.hexdigest()
    with open(path, 'rb') as f:
        for block in iter(lambda: f.read(1 << 20), b''):
            h.update(block)
    return h.hexdigest()


def to_json(obj):
    """Convert numpy scalars and arrays (recursively) into JSON-serializable values."""
    if isinstance(obj, dict):
        return OrderedDict((str(k), to_json(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_json(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def write_json(obj, path):
    with open(path, 'w') as f:
        json.dump(to_json(obj), f, indent=2)
        f.write('\n')


def args_config(args):
    """The JSON-serializable part of an argparse namespace."""
    config = OrderedDict()
    for key, value in sorted(vars(args).items()):
        value = to_json(value)
        try:
            json.dumps(value)
        except TypeError:
            continue
        config[key] = value
    return config


def build_manifest(subcommand, args, seed=None, derived_seeds=None, inputs=None):
    from lobstur import __version__
    manifest = OrderedDict()
    manifest['subcommand'] = subcommand
    manifest['config'] = args_config(args)
    manifest['seed'] = seed
    manifest['derived_seeds'] = derived_seeds or []
    manifest['inputs'] = OrderedDict(
        (name, OrderedDict([('path', path), ('sha256', file_digest(path))]))
        for name, path in (inputs or {}).items() if path is not None
    )
    manifest['version'] = __version__
    return manifest


def _replace(staging, path):
    if os.path.lexists(path):
        trash = tempfile.mkdtemp(prefix='.{}.old-'.format(os.path.basename(path)), dir=os.path.dirname(path))
        os.replace(path, os.path.join(trash, 'old'))
        os.replace(staging, path)
        shutil.rmtree(trash, ignore_errors=True)
    else:
        os.replace(staging, path)


@contextlib.contextmanager
def atomic_output_dir(path):
    """Yield a staging directory that replaces *path* only if the block succeeds."""
    path = os.path.abspath(path)
    parent = os.path.dirname(path)
    os.makedirs(parent, exist_ok=True)
    staging = tempfile.mkdtemp(prefix='.{}.staging-'.format(os.path.basename(path)), dir=parent)
    try:
        yield staging
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    _replace(staging, path)


@contextlib.contextmanager
def atomic_output_files(*paths):
    """Yield staging paths that replace *paths* together only if the block succeeds."""
    paths = [os.path.abspath(p) for p in paths]
    staging_dirs, staged = [], []
    for path in paths:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        d = tempfile.mkdtemp(prefix='.{}.staging-'.format(os.path.basename(path)), dir=os.path.dirname(path))
        staging_dirs.append(d)
        staged.append(os.path.join(d, os.path.basename(path)))
    try:
        yield staged
        for tmp, path in zip(staged, paths):
            os.replace(tmp, path)
    finally:
        for d in staging_dirs:
            shutil.rmtree(d, ignore_errors=True)
