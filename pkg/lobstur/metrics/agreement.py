# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Discrete agreement between two embeddings: overlap of Euclidean
neighborhoods and agreement of k-means clusterings.
"""

from collections import OrderedDict

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import comb, entr

from lobstur.data import feature_knn
from lobstur.data.data_utils import make_rng
from lobstur.errors import DataError
from . import register_metric
from .embedding import as_matrix


MAX_RESTARTS = 50


@register_metric('neighbor_kept_ratio', pairwise=True)
def neighbor_kept_ratio(Ha, Hb, m=10):
    """Mean fraction of the *m* nearest neighbors of a node shared by both embeddings."""
    Ha, Hb = as_matrix(Ha), as_matrix(Hb)
    n = Ha.shape[0]
    if Hb.shape[0] != n:
        raise DataError('embeddings have {} and {} rows'.format(n, Hb.shape[0]))
    if not 1 <= m <= n - 1:
        raise DataError('m must lie in [1, {}], got {}'.format(n - 1, m))
    knn_a, knn_b = feature_knn(Ha, m), feature_knn(Hb, m)
    kept = [len(np.intersect1d(knn_a[i], knn_b[i], assume_unique=True)) for i in range(n)]
    return float(np.mean(kept) / m)


def _contingency(a, b):
    a, b = np.asarray(a), np.asarray(b)
    if a.ndim != 1 or a.shape != b.shape:
        raise DataError('label vectors must have the same length, got {} and {}'.format(a.shape, b.shape))
    if len(a) < 2:
        raise DataError('label vectors need at least 2 entries')
    _, a_idx = np.unique(a, return_inverse=True)
    _, b_idx = np.unique(b, return_inverse=True)
    table = np.zeros((a_idx.max() + 1, b_idx.max() + 1), dtype=np.int64)
    np.add.at(table, (a_idx, b_idx), 1)
    return table


def ari(a, b):
    """Adjusted Rand index of two labelings."""
    table = _contingency(a, b)
    n = table.sum()
    index = comb(table, 2).sum()
    sum_a = comb(table.sum(axis=1), 2).sum()
    sum_b = comb(table.sum(axis=0), 2).sum()
    expected = sum_a * sum_b / comb(n, 2)
    maximum = (sum_a + sum_b) / 2.
    if maximum == expected:
        # both labelings are trivial (one cluster, or all singletons)
        return 1.
    return float((index - expected) / (maximum - expected))


def nmi(a, b):
    """Normalized mutual information, arithmetic-mean normalization."""
    table = _contingency(a, b)
    joint = table / table.sum()
    pa, pb = joint.sum(axis=1), joint.sum(axis=0)
    h_a, h_b = entr(pa).sum(), entr(pb).sum()
    if h_a == 0. and h_b == 0.:
        return 1.
    nz = joint > 0
    mi = (joint[nz] * np.log(joint[nz] / np.outer(pa, pb)[nz])).sum()
    return float(np.clip(mi / ((h_a + h_b) / 2.), 0., 1.))


def _kmeans_plus_plus(X, k, rng):
    n = X.shape[0]
    centers = [int(rng.integers(n))]
    closest = cdist(X, X[centers]).min(axis=1) ** 2
    for _ in range(1, k):
        total = closest.sum()
        if total > 0:
            idx = int(np.searchsorted(np.cumsum(closest), rng.random() * total, side='right'))
            idx = min(idx, n - 1)
        else:
            free = np.setdiff1d(np.arange(n), centers)
            idx = int(free[rng.integers(len(free))])
        centers.append(idx)
        closest = np.minimum(closest, ((X - X[idx]) ** 2).sum(axis=1))
    return X[centers].copy()


def _lloyd(X, centers, max_iter, tol):
    for _ in range(max_iter):
        dist = cdist(X, centers, metric='sqeuclidean')
        labels = dist.argmin(axis=1)
        new_centers = centers.copy()
        for c in range(len(centers)):
            members = labels == c
            if members.any():
                new_centers[c] = X[members].mean(axis=0)
            else:
                # reseed an empty cluster at the point farthest from its center
                far = int(dist[np.arange(len(X)), labels].argmax())
                new_centers[c] = X[far]
        shift = ((new_centers - centers) ** 2).sum()
        centers = new_centers
        if shift <= tol:
            break
    dist = cdist(X, centers, metric='sqeuclidean')
    labels = dist.argmin(axis=1)
    return labels, float(dist[np.arange(len(X)), labels].sum())


def _relabel(labels):
    """Number clusters by first appearance."""
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first, kind='stable')
    mapping = np.empty(labels.max() + 1, dtype=np.int64)
    mapping[np.unique(labels)[order]] = np.arange(len(order))
    return mapping[labels]


def kmeans(H, k, seed, n_init=10, max_iter=300, tol=1e-6):
    """Lloyd's algorithm with k-means++ seeding; the best of *n_init*
    restarts (at most 50) by inertia, clusters numbered by first appearance."""
    X = as_matrix(H)
    n = X.shape[0]
    if int(k) != k or not 1 <= k <= n:
        raise DataError('k must lie in [1, {}], got {}'.format(n, k))
    k = int(k)
    best_labels, best_inertia = None, np.inf
    for restart in range(min(int(n_init), MAX_RESTARTS)):
        rng = make_rng(seed, 'kmeans', restart)
        labels, inertia = _lloyd(X, _kmeans_plus_plus(X, k, rng), max_iter, tol)
        if inertia < best_inertia:
            best_labels, best_inertia = labels, inertia
    return _relabel(best_labels)


@register_metric('label_matching', pairwise=True)
def label_matching(Ha, Hb, clusters=2, seed=0):
    """Cluster each embedding with k-means and compare the two labelings."""
    labels_a = kmeans(Ha, clusters, seed)
    labels_b = kmeans(Hb, clusters, seed)
    return OrderedDict([('ari', ari(labels_a, labels_b)), ('nmi', nmi(labels_a, labels_b))])
