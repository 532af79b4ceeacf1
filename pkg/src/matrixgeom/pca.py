"""Principal component analysis from the SVD of mean-centred data.

Data points may be the rows (``orientation="rows_as_points"``, shape m x d)
or the columns (``"cols_as_points"``, shape d x m) of the input. Principal
components are then the right or left singular vectors of the centred
matrix, respectively. No variance scaling is applied: singular values are
those of the raw centred matrix.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_matrix, check_vector
from .exceptions import ContractError, DimensionError
from .linalg import rank_from_singular_values, svd

ROWS = "rows_as_points"
COLS = "cols_as_points"
ORIENTATIONS = (ROWS, COLS)


@dataclass(frozen=True)
class PcaModel:
    """Fitted principal components.

    ``components`` has one orthonormal component per row, ordered by
    nonincreasing ``singular_values``. Directions whose singular value falls
    below the rank tolerance are dropped, so ``components`` may be empty.
    """

    mean: np.ndarray
    components: np.ndarray
    singular_values: np.ndarray
    orientation: str
    tie_flags: tuple = ()

    @property
    def n_components(self):
        return self.components.shape[0]

    @property
    def dim(self):
        return self.mean.shape[0]


def _check_orientation(orientation):
    if orientation not in ORIENTATIONS:
        raise ContractError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")


def as_rows(data, orientation):
    """Return the data with one point per row."""
    _check_orientation(orientation)
    X = check_matrix(data, "data")
    return X if orientation == ROWS else X.T


def pca_fit(data, orientation=ROWS, n_components=None):
    """Fit principal components to ``data``.

    Parameters
    ----------
    data : array_like
        m points in R^d, laid out according to ``orientation``.
    orientation : {"rows_as_points", "cols_as_points"}
    n_components : int, optional
        Keep at most this many components (after the rank cut).
    """
    X = as_rows(data, orientation)
    mean = X.mean(axis=0)
    centred = X - mean
    if orientation == ROWS:
        f = svd(centred, full_matrices=False)
        basis = f.V
    else:
        f = svd(centred.T, full_matrices=False)
        basis = f.W
    d = f.singular_values
    count = rank_from_singular_values(d, centred.shape)
    if n_components is not None:
        if n_components < 0:
            raise ContractError("n_components must be nonnegative")
        count = min(count, int(n_components))
    return PcaModel(
        mean=mean,
        components=basis[:, :count].T.copy(),
        singular_values=d[:count].copy(),
        orientation=orientation,
        tie_flags=tuple(f.tie_flags[: max(count - 1, 0)]),
    )


def _check_k(model, k):
    if k is None:
        return model.n_components
    if not (0 <= k <= model.n_components):
        raise ContractError(f"k must be in [0, {model.n_components}], got {k}")
    return int(k)


def project(model, x, k=None):
    """Coefficients ``<x - mean, w_i>`` on the first ``k`` components (default: all)."""
    k = _check_k(model, k)
    x = check_vector(x, "x", model.dim)
    return model.components[:k] @ (x - model.mean)


def reconstruct(model, coeffs):
    """``mean + sum_i coeffs_i w_i``."""
    coeffs = check_vector(coeffs, "coeffs")
    k = coeffs.shape[0]
    if k > model.n_components:
        raise DimensionError(f"got {k} coefficients but the model has {model.n_components} components")
    return model.mean + coeffs @ model.components[:k]


def reconstruction_error(model, data, k=None):
    """Frobenius norm of the centred data minus its projection on the first ``k`` components."""
    k = _check_k(model, k)
    X = as_rows(data, model.orientation)
    if X.shape[1] != model.dim:
        raise DimensionError(f"data points have dimension {X.shape[1]}, model expects {model.dim}")
    centred = X - model.mean
    C = model.components[:k]
    return float(np.linalg.norm(centred - (centred @ C.T) @ C))
