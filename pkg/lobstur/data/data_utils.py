# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import zlib

import numpy as np


_MASK64 = (1 << 64) - 1


def _stream_id(key):
    if isinstance(key, (int, np.integer)):
        return int(key) & _MASK64
    return zlib.crc32(str(key).encode('utf-8'))


def _philox_key(seed, keys):
    seq = np.random.SeedSequence(
        entropy=int(seed) & _MASK64,
        spawn_key=tuple(_stream_id(k) for k in keys),
    )
    return seq.generate_state(2, np.uint64)


def make_rng(seed, *keys, substream=0):
    """Return a :class:`numpy.random.Generator` over a Philox stream.

    The stream is fully determined by *seed*, the stream *keys* (ints or
    strings) and *substream*. Substreams share a key and differ in the high
    word of the Philox counter, so a consumer can give every row (or every
    node) its own stream without caring about the order rows are drawn in.

    Args:
        seed (int): 64-bit base seed
        keys: names of the stream, e.g. ``make_rng(seed, 'edges')``
        substream (int, optional): counter offset. Default: ``0``
    """
    counter = np.zeros(4, dtype=np.uint64)
    counter[3] = int(substream) & _MASK64
    bit_generator = np.random.Philox(key=_philox_key(seed, keys), counter=counter)
    return np.random.Generator(bit_generator)


def derive_seed(seed, *keys):
    """Mix *seed* with *keys* into a new 64-bit seed."""
    seq = np.random.SeedSequence(
        entropy=int(seed) & _MASK64,
        spawn_key=tuple(_stream_id(k) for k in keys),
    )
    return int(seq.generate_state(1, np.uint64)[0])


def weighted_choice(rng, weights):
    """Index drawn with probability proportional to non-negative *weights*."""
    cumulative = np.cumsum(weights)
    target = rng.random() * cumulative[-1]
    idx = int(np.searchsorted(cumulative, target, side='right'))
    return min(idx, len(cumulative) - 1)


def read_only(array):
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array
