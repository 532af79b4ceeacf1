"""Input validation helpers used at every public entry point."""

import numpy as np

from .exceptions import ContractError, DimensionError


def check_matrix(A, name="A"):
    """Return ``A`` as a 2-D float64 array, rejecting NaN/Inf and empty shapes."""
    arr = np.asarray(A, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got ndim={arr.ndim}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"{name} must have positive dimensions, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractError(f"{name} contains non-finite entries")
    return arr


def check_square(A, name="A"):
    arr = check_matrix(A, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    return arr


def check_same_shape(A, B, names=("A", "B")):
    if A.shape != B.shape:
        raise DimensionError(
            f"{names[0]} and {names[1]} must have the same shape, got {A.shape} and {B.shape}"
        )


def check_vector(x, name="x", size=None):
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be 1-dimensional, got ndim={arr.ndim}")
    if size is not None and arr.shape[0] != size:
        raise DimensionError(f"{name} must have length {size}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ContractError(f"{name} contains non-finite entries")
    return arr


def check_symmetric(S, rtol=1e-12, name="S"):
    arr = check_square(S, name)
    scale = max(1.0, float(np.max(np.abs(arr))))
    if np.max(np.abs(arr - arr.T)) > rtol * scale:
        raise ContractError(f"{name} is not symmetric within {rtol:g} relative")
    return arr


def check_sphere(A, rtol=1e-10, name="A"):
    """Validate that a square matrix lies on the sphere of Frobenius radius sqrt(n)."""
    arr = check_square(A, name)
    n = arr.shape[0]
    radius = np.sqrt(n)
    if abs(np.linalg.norm(arr) - radius) > rtol * radius:
        raise ContractError(
            f"{name} has Frobenius norm {np.linalg.norm(arr):.17g}, expected sqrt({n})"
        )
    return arr
