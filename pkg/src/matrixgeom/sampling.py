"""Seeded random matrices used by the geometry report and the test suite."""

import numpy as np

from .linalg import gram_schmidt


def make_rng(seed):
    return np.random.default_rng(seed)


def random_orthogonal(rng, n):
    """Haar-random orthogonal matrix: Gram-Schmidt of a standard normal matrix."""
    return gram_schmidt(rng.standard_normal((n, n)))


def random_rotation(rng, n):
    Q = random_orthogonal(rng, n)
    if np.linalg.det(Q) < 0:
        Q[:, -1] = -Q[:, -1]
    return Q


def random_sphere_point(rng, n):
    A = rng.standard_normal((n, n))
    return np.sqrt(n) * A / np.linalg.norm(A)


def random_unit_vector(rng, n):
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)
