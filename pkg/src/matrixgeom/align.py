"""Orthogonal Procrustes alignment of ordered point sets.

Point sets are ``(k, n)`` arrays: one point of R^n per row. After both sets
are centred (and optionally scaled to unit total squared norm), the
minimiser of ``sum_i ||U p_i - q_i||^2`` over O(n) is the orthogonal matrix
nearest to ``B A^T``, where the columns of ``A`` and ``B`` are the centred
points. Restricting to SO(n) gives the Wahba/Kabsch attitude estimate.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import check_matrix
from .decomp import nearest_orthogonal
from .exceptions import DegenerateInputError, DimensionError
from .linalg import default_rank_tol, svd


@dataclass(frozen=True)
class ProcrustesResult:
    """Optimal orthogonal map between two centred point sets.

    ``disparity`` is the sum of squared residuals ``sum_i ||U p'_i - q'_i||^2``
    over the centred (and, if requested, scale-normalised) points.
    ``unique`` is False when ``B A^T`` is rank deficient, so other rotations
    attain the same disparity.
    """

    rotation: np.ndarray
    centroid_p: np.ndarray
    centroid_q: np.ndarray
    scale_p: float
    scale_q: float
    disparity: float
    special: bool
    unique: bool = True


def check_points(points, name="points"):
    return check_matrix(points, name)


def center(points):
    """Translate a point set so its centroid is the origin; return ``(centred, centroid)``."""
    points = check_points(points)
    centroid = points.mean(axis=0)
    return points - centroid, centroid


def scale_normalize(points):
    """Scale a centred point set to unit total squared norm; return ``(scaled, scale)``.

    Raises
    ------
    DegenerateInputError
        If every point is zero.
    """
    points = check_points(points)
    scale = float(np.linalg.norm(points))
    if scale == 0.0:
        raise DegenerateInputError("all points coincide with the origin")
    return points / scale, scale


def disparity(P, Q, U):
    """Sum of squared distances ``sum_i ||U p_i - q_i||^2`` (no centring applied)."""
    P = check_points(P, "P")
    Q = check_points(Q, "Q")
    U = check_matrix(U, "U")
    if P.shape != Q.shape:
        raise DimensionError(f"P and Q must have the same shape, got {P.shape} and {Q.shape}")
    if U.shape != (P.shape[1], P.shape[1]):
        raise DimensionError(f"U must be {P.shape[1]} x {P.shape[1]}, got {U.shape}")
    R = P @ U.T - Q
    return float(np.sum(R * R))


def cross_covariance(P, Q):
    """``B A^T`` for point sets stored as rows: columns of A are p_i, of B are q_i."""
    return Q.T @ P


def procrustes_fit(P, Q, special=False, normalize_scale=False):
    """Best orthogonal (``special=True``: rotation) map taking ``P`` onto ``Q``.

    If either set collapses to its centroid the alignment is undefined: a
    :class:`RuntimeWarning` is issued and the identity is returned.
    """
    P = check_points(P, "P")
    Q = check_points(Q, "Q")
    if P.shape != Q.shape:
        raise DimensionError(f"P and Q must have the same shape, got {P.shape} and {Q.shape}")
    n = P.shape[1]
    Pc, cp = center(P)
    Qc, cq = center(Q)
    sp = sq = 1.0
    if not np.any(Pc) or not np.any(Qc):
        warnings.warn("point set collapses to its centroid; returning the identity", RuntimeWarning)
        U = np.eye(n)
        return ProcrustesResult(U, cp, cq, sp, sq, disparity(Pc, Qc, U), special, unique=False)
    if normalize_scale:
        Pc, sp = scale_normalize(Pc)
        Qc, sq = scale_normalize(Qc)
    M = cross_covariance(Pc, Qc)
    U = nearest_orthogonal(M, special=special)
    d = svd(M, full_matrices=False).singular_values
    tol = default_rank_tol(M.shape) * d[0]
    # a rotation stays unique when only the smallest singular value vanishes
    unique = bool(np.all(d[:-1] > tol) and (special or d[-1] > tol))
    return ProcrustesResult(U, cp, cq, sp, sq, disparity(Pc, Qc, U), special, unique)
