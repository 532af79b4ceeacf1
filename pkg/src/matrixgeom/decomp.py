"""Polar decomposition, PSD square roots, Eckart-Young truncation and nearest neighbours.

All maps here are read off one SVD ``A = W D V^T``:

* nearest orthogonal matrix ``W V^T`` (the orthogonal polar factor),
* nearest rank-``r`` matrix ``W D' V^T`` with ``D'`` keeping the leading ``r``
  singular values,
* nearest "best of rank r" matrix ``W diag(1, .., 1, 0, .., 0) V^T``.

They are therefore equivariant under ``A -> U A V^T`` for orthogonal ``U, V``.
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ._validation import check_matrix, check_sphere, check_square, check_symmetric
from .exceptions import ContractError, NotPSDError, RankError
from .linalg import TIE_RTOL, det, rank_from_singular_values, rank_of, svd, sym_eigen

Side = Literal["right", "left"]


@dataclass(frozen=True)
class PolarFactors:
    """``A = U @ P`` (side="right") or ``A = P @ U`` (side="left").

    ``unique_orthogonal`` is False when ``A`` is singular, in which case ``U``
    is one of several valid orthogonal factors (the one from the computed SVD).
    """

    U: np.ndarray
    P: np.ndarray
    side: str
    unique_orthogonal: bool

    def reconstruct(self):
        return self.U @ self.P if self.side == "right" else self.P @ self.U


@dataclass(frozen=True)
class TruncationResult:
    """Nearest matrix of rank at most ``target_rank`` and its Frobenius distance.

    ``tie`` is set when ``d_r`` and ``d_{r+1}`` coincide (to 1e-10 relative);
    the optimum is then not unique and ``matrix`` is the computed SVD's choice.
    """

    matrix: np.ndarray
    target_rank: int
    achieved_distance: float
    tie: bool


def _symmetrize(M):
    return 0.5 * (M + M.T)


def polar_decompose(A, side: Side = "right"):
    """Polar decomposition from the SVD: ``U = W V^T``, ``P = V D V^T`` or ``P' = W D W^T``."""
    A = check_square(A)
    if side not in ("right", "left"):
        raise ContractError(f"side must be 'right' or 'left', got {side!r}")
    f = svd(A)
    U = f.W @ f.V.T
    if side == "right":
        P = _symmetrize((f.V * f.singular_values) @ f.V.T)
    else:
        P = _symmetrize((f.W * f.singular_values) @ f.W.T)
    unique = rank_from_singular_values(f.singular_values, A.shape) == A.shape[0]
    return PolarFactors(U=U, P=P, side=side, unique_orthogonal=unique)


def psd_sqrt(S):
    """Symmetric PSD square root ``Q sqrt(L) Q^T`` of a symmetric PSD matrix.

    Eigenvalues in ``[-1e-8 ||S||, 0)`` are treated as rounding dust and
    clamped to zero; anything more negative raises :class:`NotPSDError`.
    """
    S = check_symmetric(S)
    e = sym_eigen(S)
    lam = e.eigenvalues
    floor = -1e-8 * np.linalg.norm(S)
    if lam.size and lam[-1] < floor:
        raise NotPSDError(f"matrix has eigenvalue {lam[-1]:.6g} < {floor:.3g}")
    root = np.sqrt(np.clip(lam, 0.0, None))
    return _symmetrize((e.Q * root) @ e.Q.T)


def truncate_rank(A, r_prime):
    """Eckart-Young: the Frobenius-nearest matrix of rank at most ``r_prime``."""
    A = check_matrix(A)
    r = min(A.shape)
    if not (0 <= int(r_prime) <= r) or int(r_prime) != r_prime:
        raise ContractError(f"r_prime must be an integer in [0, {r}], got {r_prime}")
    r_prime = int(r_prime)
    f = svd(A, full_matrices=False)
    d = f.singular_values
    kept = (f.W[:, :r_prime] * d[:r_prime]) @ f.V[:, :r_prime].T
    tie = 0 < r_prime < r and bool(d[r_prime - 1] - d[r_prime] <= TIE_RTOL * d[0])
    return TruncationResult(
        matrix=kept,
        target_rank=r_prime,
        achieved_distance=float(np.linalg.norm(A - kept)),
        tie=tie,
    )


def nearest_orthogonal(A, special=False):
    """Orthogonal matrix nearest to ``A`` in Frobenius norm.

    With ``special=True`` the search is restricted to rotations (det = +1):
    the last singular pair is flipped when ``det(W V^T) < 0`` (Kabsch).
    """
    A = check_square(A)
    f = svd(A)
    if not special:
        return f.W @ f.V.T
    s = np.ones(A.shape[0])
    if det(f.W @ f.V.T) < 0:
        s[-1] = -1.0
    return (f.W * s) @ f.V.T


def nearest_best_of_rank(A, r):
    """Nearest matrix that is orthogonal on an ``r``-plane and zero on its complement."""
    A = check_square(A)
    n = A.shape[0]
    if not (1 <= r <= n):
        raise ContractError(f"r must be in [1, {n}], got {r}")
    f = svd(A)
    rank = rank_from_singular_values(f.singular_values, A.shape)
    if rank < r:
        raise RankError(f"A has rank {rank} < {r}")
    return f.W[:, :r] @ f.V[:, :r].T


def nearest_singular_on_sphere(A):
    """Nearest singular matrix to ``A`` on the sphere of radius sqrt(n).

    The rank-(n-1) truncation rescaled back to the sphere: it maximises
    ``<A, B>`` over singular ``B`` of norm sqrt(n), hence minimises both the
    chordal and the angular distance.
    """
    A = check_sphere(A)
    n = A.shape[0]
    if rank_of(A) < n:
        raise ContractError("A is already singular")
    T = truncate_rank(A, n - 1).matrix
    return np.sqrt(n) * T / np.linalg.norm(T)


__all__ = [
    "PolarFactors",
    "TruncationResult",
    "polar_decompose",
    "psd_sqrt",
    "truncate_rank",
    "nearest_orthogonal",
    "nearest_best_of_rank",
    "nearest_singular_on_sphere",
]
