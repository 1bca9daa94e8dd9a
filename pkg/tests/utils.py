# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import itertools

import numpy as np

from lobstur.data import Graph


def path_graph(n, features=None):
    return Graph(n, [(i, i + 1) for i in range(n - 1)], features)


def cycle_graph(n, features=None):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], features)


def star_graph(leaves, features=None):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], features)


def complete_graph(n, features=None):
    return Graph(n, list(itertools.combinations(range(n), 2)), features)


def random_graph(n, p, seed, num_features=0):
    """Erdos-Renyi graph with optional Gaussian features (tests only)."""
    rng = np.random.RandomState(seed)
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.rand() < p]
    features = rng.randn(n, num_features) if num_features > 0 else None
    return Graph(n, edges, features)


def dense_adjacency(g):
    A = np.zeros((g.num_nodes, g.num_nodes), dtype=np.int64)
    for u, v in g.edges.tolist():
        A[u, v] = A[v, u] = 1
    return A


def brute_force_stats(g):
    """Graph statistics from dense matrix powers and explicit loops."""
    A = dense_adjacency(g)
    n = g.num_nodes
    deg = A.sum(axis=1)
    A3 = A @ A @ A
    tri_node = np.diag(A3) // 2
    num_triangles = int(np.trace(A3)) // 6
    local = [2. * tri_node[i] / (deg[i] * (deg[i] - 1)) if deg[i] >= 2 else 0. for i in range(n)]
    triples = sum(d * (d - 1) / 2. for d in deg)

    # components by repeated flood fill
    label = [-1] * n
    sizes = []
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = len(sizes)
        stack, size = [s], 0
        while stack:
            u = stack.pop()
            size += 1
            for v in range(n):
                if A[u, v] and label[v] < 0:
                    label[v] = label[s]
                    stack.append(v)
        sizes.append(size)

    xs, ys = [], []
    for u in range(n):
        for v in range(n):
            if A[u, v]:
                xs.append(deg[u])
                ys.append(deg[v])
    xs, ys = np.array(xs, dtype=np.float64), np.array(ys, dtype=np.float64)
    if len(xs) == 0 or xs.std() == 0 or ys.std() == 0:
        assortativity = 0.
    else:
        assortativity = float(np.mean((xs - xs.mean()) * (ys - ys.mean())) / (xs.std() * ys.std()))

    m = len(g.edges)
    return {
        'num_nodes': n,
        'num_edges': m,
        'avg_degree': 2. * m / n,
        'density': 2. * m / (n * (n - 1)) if n > 1 else 0.,
        'avg_clustering_coefficient': float(np.mean(local)),
        'num_connected_components': len(sizes),
        'giant_component_size': max(sizes),
        'degree_assortativity': assortativity,
        'pagerank_sum': 1.,
        'transitivity': 3. * num_triangles / triples if triples > 0 else 0.,
        'num_triangles': num_triangles,
    }


def brute_force_knn_sets(D, k):
    """Neighbor lists from a full distance matrix: ascending distance, ties by id."""
    n = len(D)
    lists = []
    for i in range(n):
        order = sorted((j for j in range(n) if j != i), key=lambda j: (D[i, j], j))
        lists.append(order[:k])
    return lists


def bfs_distances(g, source):
    A = dense_adjacency(g)
    dist = np.full(g.num_nodes, -1)
    dist[source] = 0
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.flatnonzero(A[u]):
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


def reference_stem_loop(C, stems, rng):
    """Plain-list stem matching on a dense candidate matrix: pop a uniform
    stem u, draw v among nodes with stems left in proportion to C[u, v]
    (u included), drop the pair when v == u or the edge already exists."""
    n = len(stems)
    pool = list(np.repeat(np.arange(n), stems))
    edges = set()
    while pool:
        u = pool.pop(rng.randint(len(pool)))
        available = np.bincount(np.array(pool, dtype=np.int64), minlength=n) > 0
        weights = np.asarray(C[u], dtype=np.float64) * available
        if weights.sum() == 0:
            continue
        v = int(rng.choice(n, p=weights / weights.sum()))
        pool.remove(v)
        if v != u:
            edges.add((min(u, v), max(u, v)))
    return edges


def random_full_rank(rng, n, p, scale=None):
    H = rng.randn(n, p)
    if scale is not None:
        H = H * scale
    return H


def cca_oracle(Ha, Hb):
    """Canonical correlations from the generalized eigenproblem
    ``Sab Sb^{-1} Sba a = rho^2 Sa a``, independent of the SVD route."""
    import scipy.linalg
    Ha = Ha - Ha.mean(axis=0)
    Hb = Hb - Hb.mean(axis=0)
    n = Ha.shape[0]
    Sa, Sb, Sab = Ha.T @ Ha / n, Hb.T @ Hb / n, Ha.T @ Hb / n
    M = Sab @ np.linalg.solve(Sb, Sab.T)
    eigvals = scipy.linalg.eigh(M, Sa, eigvals_only=True)
    eigvals = np.sort(np.clip(eigvals, 0., 1.))[::-1]
    return np.sqrt(eigvals[:min(Ha.shape[1], Hb.shape[1])])
