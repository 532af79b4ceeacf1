"""scikit-learn compatible estimators over the decomposition routines.

These wrap the functional API so the algorithms can be dropped into
``Pipeline``, ``clone`` and friends. They follow the usual conventions:
hyper-parameters are stored verbatim by ``__init__``, fitted state lives in
trailing-underscore attributes, ``fit`` returns ``self``.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import pca as _pca
from .align import procrustes_fit
from .decomp import truncate_rank
from .linalg import svd


def _check_X(X):
    return check_array(X, dtype=np.float64, ensure_all_finite=True)


class PrincipalComponents(TransformerMixin, BaseEstimator):
    """PCA by SVD of the centred data matrix.

    Parameters
    ----------
    n_components : int or None, default=None
        Number of components to keep; None keeps every direction above the
        rank tolerance.
    orientation : {"rows_as_points", "cols_as_points"}, default="rows_as_points"
        Whether points are rows (the scikit-learn convention) or columns of
        ``X``. ``transform`` and ``inverse_transform`` use the same layout.

    Attributes
    ----------
    model_ : PcaModel
    mean_ : ndarray of shape (n_features,)
    components_ : ndarray of shape (n_components_, n_features)
    singular_values_ : ndarray of shape (n_components_,)
    n_components_ : int
    """

    def __init__(self, n_components=None, orientation="rows_as_points"):
        self.n_components = n_components
        self.orientation = orientation

    def fit(self, X, y=None):
        X = _check_X(X)
        self.model_ = _pca.pca_fit(X, self.orientation, self.n_components)
        self.mean_ = self.model_.mean
        self.components_ = self.model_.components
        self.singular_values_ = self.model_.singular_values
        self.n_components_ = self.model_.n_components
        self.n_features_in_ = self.model_.dim
        return self

    def transform(self, X):
        check_is_fitted(self)
        rows = _pca.as_rows(_check_X(X), self.orientation)
        coeffs = (rows - self.mean_) @ self.components_.T
        return coeffs if self.orientation == _pca.ROWS else coeffs.T

    def inverse_transform(self, X):
        check_is_fitted(self)
        coeffs = _pca.as_rows(_check_X(X), self.orientation)
        k = coeffs.shape[1]
        rows = self.mean_ + coeffs @ self.components_[:k]
        return rows if self.orientation == _pca.ROWS else rows.T

    def reconstruction_error(self, X, k=None):
        check_is_fitted(self)
        return _pca.reconstruction_error(self.model_, X, k)


class LowRankApproximation(TransformerMixin, BaseEstimator):
    """Eckart-Young truncation as a transformer.

    ``fit`` computes the leading ``rank`` right singular vectors;
    ``transform`` projects rows onto their span, so ``fit_transform(X)`` is
    the nearest matrix to ``X`` of rank at most ``rank``.
    """

    def __init__(self, rank=1):
        self.rank = rank

    def fit(self, X, y=None):
        X = _check_X(X)
        result = truncate_rank(X, self.rank)
        f = svd(X, full_matrices=False)
        self.singular_values_ = f.singular_values
        self.right_vectors_ = f.V[:, : self.rank].T.copy()
        self.distance_ = result.achieved_distance
        self.tie_ = result.tie
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = _check_X(X)
        return (X @ self.right_vectors_.T) @ self.right_vectors_


class ProcrustesAligner(TransformerMixin, BaseEstimator):
    """Orthogonal Procrustes alignment of a source point set onto a target.

    ``fit(X, Y)`` takes corresponding points as rows. ``transform`` maps
    points of the source frame into the target frame:
    ``q = scale_q * U (p - c_p) / scale_p + c_q``.

    Parameters
    ----------
    special : bool, default=False
        Restrict to proper rotations (det = +1), as in attitude estimation.
    normalize_scale : bool, default=False
        Scale both centred sets to unit total squared norm before fitting.
    """

    def __init__(self, special=False, normalize_scale=False):
        self.special = special
        self.normalize_scale = normalize_scale

    def fit(self, X, y):
        X = _check_X(X)
        Y = _check_X(y)
        self.result_ = procrustes_fit(X, Y, self.special, self.normalize_scale)
        self.rotation_ = self.result_.rotation
        self.disparity_ = self.result_.disparity
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = _check_X(X)
        r = self.result_
        return r.scale_q * ((X - r.centroid_p) / r.scale_p) @ r.rotation.T + r.centroid_q

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, y).transform(X)
