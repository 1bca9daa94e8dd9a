# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Dimensional-collapse diagnostics computed from the singular values of an
embedding matrix.
"""

import numpy as np
from scipy.special import entr

from lobstur.errors import DataError
from . import register_metric
from .embedding import as_matrix


def _singular_values(H):
    s = np.linalg.svd(as_matrix(H), compute_uv=False)
    if s[0] == 0.:
        raise DataError('embedding is the zero matrix')
    return s


@register_metric('stable_rank')
def stable_rank(H):
    """``||H||_F^2 / ||H||_2^2``."""
    s = _singular_values(H)
    return float((s ** 2).sum() / s[0] ** 2)


@register_metric('rank_me')
def rank_me(H, eps=1e-12):
    """Exponential of the entropy of the normalized singular values.

    *eps* is added to every normalized value, which are then renormalized to
    sum to one.
    """
    if eps < 0:
        raise DataError('eps must be non-negative, got {}'.format(eps))
    s = _singular_values(H)
    p = s / s.sum() + eps
    p = p / p.sum()
    return float(np.exp(entr(p).sum()))


@register_metric('coherence')
def coherence(H):
    """``max_i ||U_i||^2 * n / p_eff`` over the left singular vectors of the
    ``p_eff`` singular values above ``1e-12 * sigma_1``."""
    H = as_matrix(H)
    U, s, _ = np.linalg.svd(H, full_matrices=False)
    if s[0] == 0.:
        raise DataError('embedding is the zero matrix')
    p_eff = int((s > 1e-12 * s[0]).sum())
    leverage = (U[:, :p_eff] ** 2).sum(axis=1)
    return float(leverage.max() * H.shape[0] / p_eff)


@register_metric('pseudo_condition')
def pseudo_condition(H):
    """``sigma_1 / sigma_p``; a numerically rank-deficient *H* is an error."""
    H = as_matrix(H)
    n, p = H.shape
    s = _singular_values(H)
    tol = s[0] * max(n, p) * np.finfo(np.float64).eps
    if n < p or s[-1] <= tol:
        raise DataError('embedding is rank-deficient, its pseudo-condition number is unbounded')
    return float(s[0] / s[-1])


@register_metric('self_cluster')
def self_cluster(H):
    """Excess squared cosine similarity of the rows over uniform directions.

    With ``G`` the Gram matrix of the row-normalized embedding, returns
    ``(||G||_F^2 - n - n(n-1)/p) / (n^2 - n - n(n-1)/p)``: 1 when all rows
    point the same way, about 0 for rows spread uniformly on the sphere.
    """
    H = as_matrix(H)
    n, p = H.shape
    norms = np.linalg.norm(H, axis=1)
    if np.any(norms == 0.):
        raise DataError('self_cluster is undefined for zero rows')
    Hn = H / norms[:, None]
    gram_fro2 = float((np.square(Hn.T @ Hn)).sum())
    baseline = n + n * (n - 1) / p
    denom = n * n - baseline
    if denom == 0.:
        # with p = 1 every row is +-1 and the Gram matrix is all +-1
        return 1.
    return (gram_fro2 - baseline) / denom
