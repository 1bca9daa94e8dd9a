# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
A small inductive embedder: Laplacian-eigenmap coordinates of the training
graph are regressed (ridge) onto neighborhood-smoothed node features, and the
fitted readout embeds any other graph with features of the same width.
"""

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackError, eigsh
import torch
import torch.nn as nn

from lobstur.errors import EmbedderError
from lobstur.metrics import EmbeddingMatrix
from . import LobsturEmbedder, register_embedder


# graphs up to this size use a dense eigensolver
DENSE_EIGH_MAX_NODES = 2000


def laplacian_eigenmap(g, p):
    """Eigenvectors 2 .. p+1 (ascending eigenvalue) of the symmetric
    normalized Laplacian; isolated nodes get a zero row in ``D^{-1/2}``."""
    n = g.num_nodes
    if p < 1 or p + 1 > n:
        raise EmbedderError('cannot take {} nontrivial eigenvectors of a {}-node graph'.format(p, n))
    adj = g.adjacency().astype(np.float64)
    deg = np.asarray(adj.sum(axis=1)).ravel()
    d_inv_sqrt = np.zeros(n)
    d_inv_sqrt[deg > 0] = 1. / np.sqrt(deg[deg > 0])
    scale = sp.diags(d_inv_sqrt)
    laplacian = sp.identity(n, format='csr') - scale @ adj @ scale
    try:
        if n <= DENSE_EIGH_MAX_NODES:
            _, eigvecs = scipy.linalg.eigh(laplacian.toarray(), subset_by_index=[0, p])
        else:
            eigvals, eigvecs = eigsh(laplacian, k=p + 1, which='SA', v0=np.full(n, 1. / np.sqrt(n)))
            eigvecs = eigvecs[:, np.argsort(eigvals, kind='stable')]
    except (np.linalg.LinAlgError, ArpackError) as e:
        raise EmbedderError('Laplacian eigendecomposition failed: {}'.format(e))
    return eigvecs[:, 1:p + 1]


def smooth_features(g, s):
    """``((D + I)^{-1} (A + I))^s X``."""
    if g.features is None:
        raise EmbedderError('the builtin embedder needs node features')
    if s < 0:
        raise EmbedderError('smoothing steps must be non-negative, got {}'.format(s))
    walk = g.adjacency().astype(np.float64) + sp.identity(g.num_nodes, format='csr')
    walk = sp.diags(1. / (g.degrees() + 1.)) @ walk
    X = np.array(g.features, dtype=np.float64)
    for _ in range(int(s)):
        X = walk @ X
    return X


class RidgeReadout(nn.Module):
    """Linear readout ``X -> X W`` holding the ridge coefficients."""

    def __init__(self, weight, smoothing_steps):
        super().__init__()
        self.register_buffer('weight', weight)
        self.smoothing_steps = smoothing_steps

    @classmethod
    def fit(cls, X, Y, ridge, smoothing_steps):
        X = torch.from_numpy(X).double()
        Y = torch.from_numpy(np.ascontiguousarray(Y)).double()
        gram = X.t() @ X + ridge * torch.eye(X.shape[1], dtype=torch.float64)
        if ridge == 0 and torch.linalg.matrix_rank(gram) < gram.shape[0]:
            raise EmbedderError('the ridge system is singular; use a positive ridge')
        try:
            weight = torch.linalg.solve(gram, X.t() @ Y)
        except RuntimeError as e:
            raise EmbedderError('ridge regression failed: {}'.format(e))
        return cls(weight, smoothing_steps)

    def forward(self, X):
        return X @ self.weight


@register_embedder('builtin-spectral')
class BuiltinSpectralEmbedder(LobsturEmbedder):
    """Hyperparameters (``theta`` keys): ``p`` output dimension, ``s``
    smoothing steps and ``ridge`` regularization."""

    def __init__(self, p=8, s=2, ridge=1e-3):
        self.defaults = {'p': p, 's': s, 'ridge': ridge}

    def _resolve(self, theta):
        params = dict(self.defaults)
        params.update({k: v for k, v in (theta or {}).items() if k in params})
        p, s, ridge = int(params['p']), int(params['s']), float(params['ridge'])
        if ridge < 0:
            raise EmbedderError('ridge must be non-negative, got {}'.format(ridge))
        return p, s, ridge

    def train(self, g_train, theta, seed=None):
        p, s, ridge = self._resolve(theta)
        target = laplacian_eigenmap(g_train, p)
        return RidgeReadout.fit(smooth_features(g_train, s), target, ridge, s)

    def apply(self, model, g_test):
        X = smooth_features(g_test, model.smoothing_steps)
        if X.shape[1] != model.weight.shape[0]:
            raise EmbedderError('model expects {} features, graph has {}'.format(model.weight.shape[0], X.shape[1]))
        with torch.no_grad():
            H = model(torch.from_numpy(X).double()).numpy()
        return EmbeddingMatrix(H)

    def config(self):
        return dict(self.defaults)
