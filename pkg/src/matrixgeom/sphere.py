"""Geometry of the sphere of n x n matrices with Frobenius norm sqrt(n).

The sphere contains the orthogonal group O(n). For n = 3 its singular
matrices form a 7-dimensional variety whose rank-1 stratum (``M4``) and
"best of rank 2" stratum (``M5``) are joined by geodesic arcs of length pi/4;
:func:`m5_ray` and :func:`m4_normal_geodesic` build those arcs explicitly.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_sphere, check_square, check_vector
from .exceptions import ContractError, DimensionError
from .linalg import cofactor_matrix, det, rank_from_singular_values, svd

TANGENT_ATOL = 1e-10
UNIT_ATOL = 1e-12
M5_TOL = 1e-8


class StratumLabel(enum.Enum):
    NONSINGULAR_POS = "nonsingular_pos"
    NONSINGULAR_NEG = "nonsingular_neg"
    RANK2_GENERIC = "rank2_generic"
    M5_BEST_RANK2 = "m5_best_rank2"
    M4_RANK1 = "m4_rank1"


def to_sphere(A):
    """Rescale a nonzero square matrix to Frobenius norm sqrt(n)."""
    A = check_square(A)
    norm = np.linalg.norm(A)
    if norm == 0.0:
        raise ContractError("the zero matrix has no image on the sphere")
    return np.sqrt(A.shape[0]) * A / norm


def angular_distance(A, B):
    """Angle ``arccos(<A, B> / n)`` between two points of the sphere, in radians."""
    A = check_sphere(A, name="A")
    B = check_sphere(B, name="B")
    if A.shape != B.shape:
        raise DimensionError(f"points live on different spheres: {A.shape} vs {B.shape}")
    cos = float(np.sum(A * B)) / A.shape[0]
    return math.acos(min(1.0, max(-1.0, cos)))


@dataclass(frozen=True)
class GeodesicArc:
    """Great-circle arc ``t -> cos(t) start + sin(t) unit_tangent`` for ``0 <= t <= length``.

    ``unit_tangent`` is orthogonal to ``start`` and, like ``start``, has
    Frobenius norm sqrt(n), so every point of the arc stays on the sphere.
    """

    start: np.ndarray
    unit_tangent: np.ndarray
    length: float

    @classmethod
    def between(cls, A, B):
        """The shortest arc from ``A`` to ``B`` (tangent from Gram-Schmidt of the chord)."""
        A = check_sphere(A, name="A")
        B = check_sphere(B, name="B")
        n = A.shape[0]
        T = B - (np.sum(A * B) / n) * A
        norm = np.linalg.norm(T)
        if norm == 0.0:
            raise ContractError("A and B are equal or antipodal; the arc is not unique")
        return cls(A, np.sqrt(n) * T / norm, angular_distance(A, B))


def geodesic_point(arc, t):
    """Point at angle ``t`` along ``arc``."""
    start = check_sphere(arc.start, name="arc.start")
    T = np.asarray(arc.unit_tangent, dtype=np.float64)
    n = start.shape[0]
    if T.shape != start.shape:
        raise DimensionError("tangent and start point have different shapes")
    if abs(np.sum(start * T)) > TANGENT_ATOL * n:
        raise ContractError("tangent is not orthogonal to the start point")
    if abs(np.linalg.norm(T) - np.sqrt(n)) > TANGENT_ATOL * np.sqrt(n):
        raise ContractError("tangent must have Frobenius norm sqrt(n)")
    if not (0.0 <= t <= arc.length + 1e-12):
        raise ContractError(f"t={t} outside [0, {arc.length}]")
    return math.cos(t) * start + math.sin(t) * T


def grad_det_sphere(A):
    """Gradient of ``det`` restricted to the sphere at ``A``.

    The Euclidean gradient of det is the cofactor matrix; subtracting its
    radial part ``(<cof, A> / n) A`` leaves the tangential component.
    """
    A = check_sphere(A)
    n = A.shape[0]
    C = cofactor_matrix(A)
    return C - (np.sum(C * A) / n) * A


def wedge_norm(A):
    """Frobenius norm of ``A wedge A``: ``|det A|`` for 2 x 2, the cofactor matrix norm for 3 x 3."""
    A = check_square(A)
    n = A.shape[0]
    if n == 2:
        return abs(det(A))
    if n == 3:
        return float(np.linalg.norm(cofactor_matrix(A)))
    raise DimensionError(f"wedge_norm is defined here for 2 x 2 and 3 x 3 matrices, got n={n}")


def _check_unit(v, name, size):
    v = check_vector(v, name, size)
    if abs(np.linalg.norm(v) - 1.0) > UNIT_ATOL:
        raise ContractError(f"{name} must be a unit vector")
    return v


def m4_point(x, y):
    """Rank-1 point ``sqrt(3) x y^T`` of ``M4`` for unit vectors ``x, y`` in R^3."""
    x = _check_unit(x, "x", 3)
    y = _check_unit(y, "y", 3)
    return np.sqrt(3.0) * np.outer(x, y)


_P = np.diag([1.0, 1.0, 0.0])
_T1 = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
_T2 = np.diag([1.0, -1.0, 0.0])


def m5_ray(a, b, t):
    """Point at angle ``t`` on the ray leaving ``diag(1, 1, 0)`` in normal direction ``a T1 + b T2``.

    The arc ``cos(t) P + sin(t) (a T1 + b T2)`` has rank 2 for ``t < pi/4``
    and drops to rank 1 at ``t = pi/4``. It is built at the unnormalised
    scale (norm sqrt(2)) and rescaled onto the sphere of radius sqrt(3).
    """
    if abs(a * a + b * b - 1.0) > UNIT_ATOL:
        raise ContractError("(a, b) must satisfy a^2 + b^2 = 1")
    if not (0.0 <= t <= math.pi / 4 + 1e-15):
        raise ContractError(f"t={t} outside [0, pi/4]")
    M = math.cos(t) * _P + math.sin(t) * (a * _T1 + b * _T2)
    return to_sphere(M)


def m4_normal_geodesic(a, b, c, d, t):
    """Geodesic leaving ``diag(sqrt 3, 0, 0)`` normal to ``M4``, block ``[[a, b], [c, d]]``.

    If the unit 2 x 2 block is nonsingular the curve has rank 3 for small
    ``t > 0``; if the block has rank 1 the curve stays at rank 2.
    """
    if abs(a * a + b * b + c * c + d * d - 1.0) > UNIT_ATOL:
        raise ContractError("(a, b, c, d) must be a unit vector")
    st = math.sin(t)
    G = np.array(
        [
            [math.cos(t), 0.0, 0.0],
            [0.0, a * st, b * st],
            [0.0, c * st, d * st],
        ]
    )
    return np.sqrt(3.0) * G


def classify_stratum(A, tol=M5_TOL):
    """Which stratum of the 3 x 3 sphere ``A`` belongs to.

    Rank is decided with the default relative rank tolerance; a rank-2 point
    is in ``M5`` when its two nonzero singular values agree to within ``tol``
    relative.
    """
    A = check_sphere(A)
    if A.shape != (3, 3):
        raise DimensionError("classify_stratum is defined for 3 x 3 matrices")
    d = svd(A, full_matrices=False).singular_values
    rank = rank_from_singular_values(d, A.shape)
    if rank == 3:
        return StratumLabel.NONSINGULAR_POS if det(A) > 0 else StratumLabel.NONSINGULAR_NEG
    if rank == 2:
        if abs(d[0] / d[1] - 1.0) <= tol:
            return StratumLabel.M5_BEST_RANK2
        return StratumLabel.RANK2_GENERIC
    return StratumLabel.M4_RANK1
