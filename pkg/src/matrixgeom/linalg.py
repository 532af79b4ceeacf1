"""Dense float64 linear algebra built on cyclic Jacobi rotations.

Everything here works on plain 2-D ``numpy`` arrays. The two kernels are a
two-sided Jacobi eigensolver for symmetric matrices (:func:`sym_eigen`) and a
one-sided Jacobi SVD (:func:`svd`), which applies the same rotations to the
columns of ``A`` that two-sided Jacobi would apply to ``A.T @ A`` without ever
forming that product.

Both sweep over index pairs in round-robin order, so each round is a set of
disjoint rotations that can be applied in one vectorised update.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._validation import check_matrix, check_same_shape, check_square, check_symmetric
from .exceptions import ContractError, ConvergenceError, SingularInputError

_EPS = np.finfo(np.float64).eps

MAX_SWEEPS = 50
EIGEN_OFFDIAG_RTOL = 1e-14
TIE_RTOL = 1e-10
_SMALL_GRAM = 16
SIGN_TOL = 1e-12


@dataclass(frozen=True)
class EigenFactors:
    """Eigendecomposition ``S = Q @ diag(eigenvalues) @ Q.T``, eigenvalues nonincreasing."""

    Q: np.ndarray
    eigenvalues: np.ndarray

    def reconstruct(self):
        return (self.Q * self.eigenvalues) @ self.Q.T


@dataclass(frozen=True)
class SvdFactors:
    """Singular value decomposition ``A = W @ D @ V.T``.

    ``W`` is n x n and ``V`` is k x k (or n x r and k x r for a thin
    decomposition, r = min(n, k)). ``tie_flags[i]`` is set when singular
    values ``i`` and ``i + 1`` agree to within ``1e-10 * d_1``.
    """

    W: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray
    tie_flags: tuple

    @property
    def D(self):
        """The singular values embedded on the diagonal of a zero matrix."""
        d = self.singular_values
        out = np.zeros((self.W.shape[1], self.V.shape[1]))
        out[np.arange(d.size), np.arange(d.size)] = d
        return out

    def reconstruct(self):
        r = self.singular_values.size
        return (self.W[:, :r] * self.singular_values) @ self.V[:, :r].T


def frobenius_inner(A, B):
    """Frobenius inner product ``sum_ij A_ij B_ij``."""
    A = check_matrix(A, "A")
    B = check_matrix(B, "B")
    check_same_shape(A, B)
    return float(np.sum(A * B))


@lru_cache(maxsize=64)
def _round_robin(m):
    """Rounds of disjoint index pairs covering every pair of ``range(m)`` once."""
    size = m + (m % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        p, q = [], []
        for i in range(size // 2):
            a, b = players[i], players[size - 1 - i]
            if a < m and b < m:
                p.append(min(a, b))
                q.append(max(a, b))
        if p:
            rounds.append((np.array(p), np.array(q)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _jacobi_angles(app, aqq, apq):
    """Cosine/sine of the rotations that annihilate ``apq`` in [[app, apq], [apq, aqq]]."""
    # t = sgn(theta) / (|theta| + sqrt(1 + theta^2)) with theta = delta / (2 apq),
    # multiplied through by |2 apq| so nothing overflows and apq = 0 gives t = 0
    delta = aqq - app
    den = np.abs(delta) + np.hypot(delta, 2.0 * apq)
    den = np.where(den == 0.0, 1.0, den)
    t = np.where(delta >= 0.0, 2.0, -2.0) * apq / den
    c = 1.0 / np.sqrt(t * t + 1.0)
    return c, t * c


def _rotate_columns(M, p, q, c, s):
    mp = M[:, p]
    mq = M[:, q]
    M[:, p] = mp * c - mq * s
    M[:, q] = mp * s + mq * c


def _first_nonzero_signs(Q):
    """Sign of the first entry of each column above 1e-12 of its largest magnitude (+1 if none)."""
    mag = np.abs(Q)
    big = mag > SIGN_TOL * np.maximum(1.0, mag.max(axis=0, initial=0.0))
    first = Q[big.argmax(axis=0), np.arange(Q.shape[1])]
    return np.where(big.any(axis=0) & (first < 0.0), -1.0, 1.0)


def _normalize_signs(Q):
    signs = _first_nonzero_signs(Q)
    return Q * signs, signs


def sym_eigen(S):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius mass drops to ``1e-14 * ||S||_F``.
    Eigenvalues come back nonincreasing; each eigenvector column has its first
    nonzero entry positive.

    Raises
    ------
    ContractError
        If ``S`` is not symmetric to within 1e-12 relative.
    ConvergenceError
        If 50 sweeps do not reach the threshold.
    """
    S = check_symmetric(S)
    n = S.shape[0]
    A = 0.5 * (S + S.T)
    Q = np.eye(n)
    norm = np.linalg.norm(A)
    if n > 1 and norm > 0.0:
        threshold = EIGEN_OFFDIAG_RTOL * norm
        rounds = _round_robin(n)
        for sweep in range(MAX_SWEEPS + 1):
            off = float(np.linalg.norm(A - np.diag(np.diag(A))))
            if off <= threshold:
                break
            if sweep == MAX_SWEEPS:
                raise ConvergenceError(
                    f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps "
                    f"(off-diagonal mass {off:.3e}, threshold {threshold:.3e})"
                )
            for p, q in rounds:
                c, s = _jacobi_angles(A[p, p], A[q, q], A[p, q])
                _rotate_columns(A, p, q, c, s)
                ap = A[p, :].copy()
                aq = A[q, :]
                A[p, :] = ap * c[:, None] - aq * s[:, None]
                A[q, :] = ap * s[:, None] + aq * c[:, None]
                A[p, q] = 0.0
                A[q, p] = 0.0
                _rotate_columns(Q, p, q, c, s)
            A = 0.5 * (A + A.T)
    evals = np.diag(A).copy()
    order = np.argsort(-evals, kind="stable")
    Q, _ = _normalize_signs(Q[:, order])
    return EigenFactors(Q=Q, eigenvalues=evals[order])


def complete_basis(Q, n):
    """Orthonormal columns spanning the complement of the columns of ``Q`` in R^n.

    Candidates are standard basis vectors, picked greedily by largest residual
    after projecting out the current basis, so the result is deterministic.
    """
    Q = np.asarray(Q, dtype=np.float64).reshape(n, -1)
    m = Q.shape[1]
    R = np.eye(n) - Q @ Q.T
    basis = [Q[:, j] for j in range(m)]
    extra = []
    for _ in range(n - m):
        j = int(np.argmax(np.sum(R * R, axis=0)))
        u = R[:, j].copy()
        for _ in range(2):
            for b in basis:
                u -= b * (b @ u)
        u /= np.linalg.norm(u)
        basis.append(u)
        extra.append(u)
        R -= np.outer(u, u @ R)
    if not extra:
        return np.zeros((n, 0))
    return np.column_stack(extra)


def _one_sided_jacobi(A):
    """Orthogonalise the columns of ``A`` (n >= k) by rotations; return (G, V)."""
    n, k = A.shape
    # G on top of V, so each round is a single column rotation
    X = np.vstack([A, np.eye(k)])
    if k == 1:
        return X[:n], X[n:]
    tol = 4.0 * max(n, k) * _EPS
    cut = (max(n, k) * _EPS) ** 2
    small = k <= _SMALL_GRAM
    rounds = _round_robin(k)
    for sweep in range(MAX_SWEEPS + 1):
        rotated = False
        for p, q in rounds:
            G = X[:n]
            if small:
                # one k x k Gram matrix per round is cheaper than per-pair reductions
                H = G.T @ G
                norms = H.diagonal()
                gamma = H[p, q]
            else:
                norms = np.einsum("ij,ij->j", G, G)
                gamma = np.einsum("ij,ij->j", G[:, p], G[:, q])
            alpha, beta = norms[p], norms[q]
            # columns already below the dead-column cut stay frozen; the largest
            # column norm never shrinks, so they end up zeroed and replaced
            active = (np.abs(gamma) > tol * np.sqrt(alpha * beta)) & (np.minimum(alpha, beta) > cut * norms.max())
            if not active.any():
                continue
            if sweep == MAX_SWEEPS:
                raise ConvergenceError(f"one-sided Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")
            rotated = True
            # inactive pairs get gamma = 0, hence the identity rotation
            c, s = _jacobi_angles(alpha, beta, np.where(active, gamma, 0.0))
            if small:
                J = np.eye(k)
                J[p, p] = c
                J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                X = X @ J
            else:
                _rotate_columns(X, p, q, c, s)
        if not rotated:
            break
    return X[:n].copy(), X[n:].copy()


def _svd_tall(A, full_matrices):
    n, k = A.shape
    # exact power-of-two rescale so squared norms neither underflow nor overflow
    top = float(np.max(np.abs(A)))
    shift = int(np.frexp(top)[1]) if top > 0.0 else 0
    G, V = _one_sided_jacobi(np.ldexp(A, -shift))
    d = np.sqrt(np.sum(G * G, axis=0))
    order = np.argsort(-d, kind="stable")
    d = d[order]
    G = G[:, order]
    V = V[:, order]
    d1 = d[0] if d.size else 0.0
    live = d > max(n, k) * _EPS * d1
    d = np.where(live, d, 0.0)
    W = np.zeros((n, k))
    W[:, live] = G[:, live] / d[live]
    dead = np.flatnonzero(~live)
    ncols = n if full_matrices else k
    if dead.size or ncols > k:
        fill = complete_basis(W[:, live], n)
        W[:, dead] = fill[:, : dead.size]
        W = np.column_stack([W, fill[:, dead.size : dead.size + ncols - k]])
    return W, np.ldexp(d, shift), V


def svd(A, full_matrices=True):
    """Singular value decomposition ``A = W @ D @ V.T``.

    One-sided Jacobi on the columns of ``A`` (or of ``A.T`` when ``A`` is
    wide). Left singular vectors for positive singular values are the
    normalised columns ``A @ v_i / d_i``; singular values at rounding level
    are set to zero and their left vectors come from basis completion.

    Sign convention: each right singular vector has its first nonzero entry
    positive, the matching left vector flipped with it; completion columns
    are normalised the same way on their own.

    Parameters
    ----------
    A : array_like of shape (n, k)
    full_matrices : bool, default=True
        If False return ``W`` of shape (n, r) and ``V`` of shape (k, r),
        r = min(n, k).

    Returns
    -------
    SvdFactors
    """
    A = check_matrix(A)
    n, k = A.shape
    if n >= k:
        W, d, V = _svd_tall(A, full_matrices)
    else:
        V, d, W = _svd_tall(A.T, full_matrices)
    r = d.size
    sv = _first_nonzero_signs(V)
    V *= sv
    live = np.zeros(W.shape[1], dtype=bool)
    live[:r] = d > 0.0
    # live left vectors follow their right partner; completion columns get their own sign
    W *= np.where(live, np.pad(sv[:r], (0, W.shape[1] - r), constant_values=1.0), _first_nonzero_signs(W))
    d1 = d[0] if r else 0.0
    ties = tuple(bool(abs(d[i] - d[i + 1]) <= TIE_RTOL * d1) for i in range(r - 1))
    return SvdFactors(W=W, singular_values=d, V=V, tie_flags=ties)


def default_rank_tol(shape):
    return 1e-10 * max(shape)


def rank_of(A, tol=None):
    """Number of singular values above ``tol * d_1`` (default tol ``1e-10 * max(n, k)``)."""
    A = check_matrix(A)
    if tol is None:
        tol = default_rank_tol(A.shape)
    if tol < 0:
        raise ContractError("tol must be nonnegative")
    return rank_from_singular_values(svd(A, full_matrices=False).singular_values, A.shape, tol)


def rank_from_singular_values(d, shape, tol=None):
    """Rank count for already computed singular values ``d`` of a matrix of ``shape``."""
    if tol is None:
        tol = default_rank_tol(shape)
    if d.size == 0 or d[0] == 0.0:
        return 0
    return int(np.count_nonzero(d > tol * d[0]))


def cofactor_matrix(A):
    """Matrix of signed minors ``C_rs = (-1)^(r+s) det(A without row r, column s)``.

    For 3 x 3 input this is the matrix of ``A wedge A`` on 2-vectors and the
    gradient of ``det`` at ``A``.
    """
    A = check_square(A)
    n = A.shape[0]
    if n == 1:
        return np.ones((1, 1))
    if n == 2:
        return np.array([[A[1, 1], -A[1, 0]], [-A[0, 1], A[0, 0]]])
    if n == 3:
        C = np.empty((3, 3))
        for r in range(3):
            r1, r2 = (r + 1) % 3, (r + 2) % 3
            for s in range(3):
                s1, s2 = (s + 1) % 3, (s + 2) % 3
                # cyclic index order absorbs the (-1)^(r+s) sign
                C[r, s] = A[r1, s1] * A[r2, s2] - A[r1, s2] * A[r2, s1]
        return C
    C = np.empty((n, n))
    idx = np.arange(n)
    for r in range(n):
        rows = idx != r
        for s in range(n):
            minor = A[np.ix_(rows, idx != s)]
            C[r, s] = (-1.0) ** (r + s) * np.linalg.det(minor)
    return C


def det(A):
    """Determinant; cofactor expansion for n <= 3, LU via numpy otherwise."""
    A = check_square(A)
    n = A.shape[0]
    if n == 1:
        return float(A[0, 0])
    if n <= 3:
        return float(A[0] @ cofactor_matrix(A)[0])
    return float(np.linalg.det(A))


def gram_schmidt(A):
    """Orthonormalise the columns of a square matrix left to right.

    Classical Gram-Schmidt with one reorthogonalisation pass, so ``A = Q R``
    with ``R`` upper triangular and positive on its diagonal.

    Raises
    ------
    SingularInputError
        If the columns are linearly dependent.
    """
    A = check_square(A)
    n = A.shape[0]
    if rank_of(A) < n:
        raise SingularInputError("gram_schmidt needs linearly independent columns")
    Q = np.zeros((n, n))
    for j in range(n):
        v = A[:, j].copy()
        for _ in range(2):
            v -= Q[:, :j] @ (Q[:, :j].T @ v)
        Q[:, j] = v / np.linalg.norm(v)
    return Q
