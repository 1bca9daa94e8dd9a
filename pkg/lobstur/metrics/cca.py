# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Linear CCA between two embeddings of the same nodes and the alignment
distance ``||Ha U - Hb V||_F`` of the canonical projections.
"""

from collections import OrderedDict

import numpy as np
import scipy.linalg

from lobstur.errors import DataError
from . import register_metric
from .embedding import as_matrix


class CcaResult(object):
    """Canonical correlations (descending) and the alignment distance.

    Attributes:
        correlations (numpy.ndarray): ``rho_1 >= ... >= rho_r`` in ``[0, 1]``
        alignment (float): Frobenius distance of the canonical projections
        r (int): number of components
        ridge (tuple): regularization added to the two covariances
    """

    def __init__(self, correlations, alignment, r, ridge):
        self.correlations = correlations
        self.alignment = alignment
        self.r = r
        self.ridge = ridge

    def __repr__(self):
        return 'CcaResult(r={}, alignment={:g})'.format(self.r, self.alignment)

    def to_dict(self):
        return OrderedDict([
            ('alignment', self.alignment),
            ('correlations', self.correlations.tolist()),
            ('r', self.r),
            ('ridge', list(self.ridge)),
        ])


def default_ridge(cov):
    return 1e-6 * np.trace(cov) / cov.shape[0]


def _inverse_sqrt(cov, ridge, name):
    eigvals, eigvecs = scipy.linalg.eigh(cov)
    lam_max = max(eigvals.max(), 0.)
    if ridge == 0 and (lam_max == 0. or eigvals.min() <= 1e-12 * lam_max):
        raise DataError('covariance of {} is rank-deficient; use a positive ridge'.format(name))
    eigvals = np.maximum(eigvals + ridge, max(ridge, 1e-12 * lam_max))
    return (eigvecs / np.sqrt(eigvals)) @ eigvecs.T


def cca_alignment(Ha, Hb, r=None, ridge=None):
    """Closed-form CCA of two embeddings.

    Columns are centered and covariances normalized by ``1/n``. The whitened
    cross-covariance ``Sa^{-1/2} Sab Sb^{-1/2}`` is decomposed by SVD; its
    singular values are the canonical correlations and the projections are
    ``U = Sa^{-1/2} U0[:, :r]``, ``V = Sb^{-1/2} V0[:, :r]``.

    Args:
        Ha, Hb: ``n x pa`` and ``n x pb`` embeddings
        r (int, optional): number of components. Default: ``min(pa, pb)``
        ridge (float, optional): added to both covariances before whitening.
            Default: ``1e-6 * trace / p`` per covariance

    Returns:
        CcaResult
    """
    Ha, Hb = as_matrix(Ha), as_matrix(Hb)
    n = Ha.shape[0]
    if Hb.shape[0] != n:
        raise DataError('embeddings have {} and {} rows'.format(n, Hb.shape[0]))
    max_r = min(Ha.shape[1], Hb.shape[1])
    r = max_r if r is None else int(r)
    if not 1 <= r <= max_r:
        raise DataError('r must lie in [1, {}], got {}'.format(max_r, r))

    Ha = Ha - Ha.mean(axis=0)
    Hb = Hb - Hb.mean(axis=0)
    cov_a = Ha.T @ Ha / n
    cov_b = Hb.T @ Hb / n
    cov_ab = Ha.T @ Hb / n
    if ridge is None:
        ridges = (default_ridge(cov_a), default_ridge(cov_b))
    else:
        if ridge < 0:
            raise DataError('ridge must be non-negative, got {}'.format(ridge))
        ridges = (float(ridge), float(ridge))

    whiten_a = _inverse_sqrt(cov_a, ridges[0], 'Ha')
    whiten_b = _inverse_sqrt(cov_b, ridges[1], 'Hb')
    U0, s, V0t = np.linalg.svd(whiten_a @ cov_ab @ whiten_b)
    U = whiten_a @ U0[:, :r]
    V = whiten_b @ V0t[:r].T
    alignment = float(np.linalg.norm(Ha @ U - Hb @ V))
    correlations = np.clip(s[:r], 0., 1.)
    return CcaResult(correlations, alignment, r, ridges)


@register_metric('cca', pairwise=True)
def cca_metric(Ha, Hb, r=None, ridge=None):
    return cca_alignment(Ha, Hb, r=r, ridge=ridge).to_dict()
