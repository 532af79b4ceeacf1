"""Independent reference computations for the test suite.

Nothing here calls into matrixgeom: random orthogonal matrices come from
numpy's Householder QR, low-rank refinements from least squares, spectra
from LAPACK.
"""

import numpy as np


def haar_orthogonal(rng, n, count):
    """``count`` Haar-distributed n x n orthogonal matrices, shape (count, n, n)."""
    Z = rng.standard_normal((count, n, n))
    Q, R = np.linalg.qr(Z)
    signs = np.sign(np.diagonal(R, axis1=1, axis2=2))
    signs[signs == 0] = 1.0
    return Q * signs[:, None, :]


def haar_rotation(rng, n, count):
    Q = haar_orthogonal(rng, n, count)
    neg = np.linalg.det(Q) < 0
    Q[neg, :, -1] *= -1.0
    return Q


def batch_frobenius_distance(A, Ms):
    diff = Ms - A[None, :, :]
    return np.sqrt(np.einsum("kij,kij->k", diff, diff))


def random_rank_r(rng, n, k, r, count):
    X = rng.standard_normal((count, n, r))
    Y = rng.standard_normal((count, r, k))
    return X @ Y


def als_refine(A, M0, r, iters=300):
    """Alternating least squares for min ||A - X Y|| over rank-r factors, started at M0."""
    U, s, Vt = np.linalg.svd(M0)
    X = U[:, :r] * s[:r]
    for _ in range(iters):
        Y = np.linalg.lstsq(X, A, rcond=None)[0]
        X = np.linalg.lstsq(Y.T, A.T, rcond=None)[0].T
    return X @ Y


def best_rank_r_by_search(rng, A, r, samples=100_000, batch=25_000):
    """Best of ``samples`` random rank-r matrices, then ALS from the best one."""
    n, k = A.shape
    best_d, best_M = np.inf, None
    scale = np.linalg.norm(A) / np.sqrt(max(n, k))
    for start in range(0, samples, batch):
        size = min(batch, samples - start)
        Ms = scale * random_rank_r(rng, n, k, r, size) / np.sqrt(r)
        d = batch_frobenius_distance(A, Ms)
        i = int(np.argmin(d))
        if d[i] < best_d:
            best_d, best_M = float(d[i]), Ms[i]
    refined = als_refine(A, best_M, r)
    return min(best_d, float(np.linalg.norm(A - refined)))


def tail_norm(singular_values, k):
    s = np.asarray(singular_values)
    return float(np.sqrt(np.sum(s[k:] ** 2)))


def central_difference_gradient(f, A, h=1e-6):
    G = np.zeros_like(A)
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            E = np.zeros_like(A)
            E[i, j] = h
            G[i, j] = (f(A + E) - f(A - E)) / (2 * h)
    return G


def det3(A):
    return (
        A[0, 0] * (A[1, 1] * A[2, 2] - A[1, 2] * A[2, 1])
        - A[0, 1] * (A[1, 0] * A[2, 2] - A[1, 2] * A[2, 0])
        + A[0, 2] * (A[1, 0] * A[2, 1] - A[1, 1] * A[2, 0])
    )


def random_orthonormal_frames(rng, d, k, count):
    """``count`` random d x k matrices with orthonormal columns."""
    Q, _ = np.linalg.qr(rng.standard_normal((count, d, k)))
    return Q
