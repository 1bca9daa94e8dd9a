# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import hashlib

import numpy as np

from lobstur.data import data_utils
from lobstur.errors import DataError


class EmbeddingMatrix(object):
    """Node embeddings: a finite real ``n x p`` matrix with ``n >= 2`` and ``p >= 1``."""

    def __init__(self, H):
        self.H = data_utils.read_only(as_matrix(H))

    def __array__(self, dtype=None):
        return self.H if dtype is None else self.H.astype(dtype)

    def __len__(self):
        return self.H.shape[0]

    def __repr__(self):
        return 'EmbeddingMatrix(n={}, p={})'.format(*self.H.shape)

    @property
    def shape(self):
        return self.H.shape

    def digest(self):
        h = hashlib.sha256()
        h.update(np.asarray(self.H.shape, dtype=np.int64).tobytes())
        h.update(self.H.tobytes())
        return h.hexdigest()


def as_matrix(H):
    """Validate *H* and return it as a float64 ndarray."""
    if isinstance(H, EmbeddingMatrix):
        return H.H
    H = np.asarray(H, dtype=np.float64)
    if H.ndim == 1:
        H = H[:, None]
    if H.ndim != 2:
        raise DataError('an embedding must be a 2-d matrix, got {} dimensions'.format(H.ndim))
    if H.shape[0] < 2 or H.shape[1] < 1:
        raise DataError('an embedding needs n >= 2 rows and p >= 1 columns, got {}'.format(H.shape))
    if not np.all(np.isfinite(H)):
        raise DataError('embedding contains non-finite values')
    return H
