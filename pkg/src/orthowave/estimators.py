"""scikit-learn compatible wrappers around the transform pipeline.

The transforms are fixed linear operators, so `fit` only locks the
signal length and materializes the operator; after that the estimators
compose with sklearn pipelines and grid-search tooling like any other
transformer.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .recipes import build_recipe
from .shrinkage import denoise, universal_rule


def _as_signal_matrix(X, allow_complex=True):
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] < 2:
        raise ValueError(f"expected (n_samples, n_features) array, got shape "
                         f"{X.shape}")
    if not allow_complex and np.iscomplexobj(X):
        raise ValueError("complex input not supported here")
    return X


class WaveletTransform(TransformerMixin, BaseEstimator):
    """Orthogonal/unitary transform defined by a recipe string.

    Parameters
    ----------
    recipe : str
        Transform construction, e.g. ``"wavmat(sym4,L=3)"`` or
        ``"product(wavmat(cd6,L=3),wavmat(haar,L=3))"``.
    """

    def __init__(self, recipe="wavmat(haar,L=1)"):
        self.recipe = recipe

    def fit(self, X, y=None):
        X = _as_signal_matrix(X)
        self.n_features_in_ = X.shape[1]
        self.operator_ = build_recipe(self.recipe, X.shape[1])
        return self

    def _check_fitted(self, X):
        if not hasattr(self, "operator_"):
            raise NotFittedError("call fit before transform")
        X = _as_signal_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, fitted for "
                             f"{self.n_features_in_}")
        return X

    def transform(self, X):
        X = self._check_fitted(X)
        return (self.operator_.matrix @ X.T).T

    def inverse_transform(self, D):
        D = self._check_fitted(D)
        return (self.operator_.matrix.conj().T @ D.T).T

    def band_layout(self):
        if not hasattr(self, "operator_"):
            raise NotFittedError("call fit first")
        return self.operator_.layout


class WaveletDenoiser(TransformerMixin, BaseEstimator):
    """Transform, hard-threshold at the universal level, reconstruct.

    Parameters
    ----------
    recipe : str
        Transform construction (see :class:`WaveletTransform`).
    sigma : float or None
        Known noise level; None estimates it per sample by MAD.
    exempt_scaling : bool
        Pass scaling coefficients through untouched.
    """

    def __init__(self, recipe="wavmat(sym4,L=3)", sigma=None,
                 exempt_scaling=False):
        self.recipe = recipe
        self.sigma = sigma
        self.exempt_scaling = exempt_scaling

    def fit(self, X, y=None):
        X = _as_signal_matrix(X)
        self.n_features_in_ = X.shape[1]
        self.operator_ = build_recipe(self.recipe, X.shape[1])
        self.rule_ = universal_rule(self.sigma,
                                    exempt_scaling=self.exempt_scaling)
        return self

    def transform(self, X):
        if not hasattr(self, "operator_"):
            raise NotFittedError("call fit before transform")
        X = _as_signal_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, fitted for "
                             f"{self.n_features_in_}")
        rows = [denoise(row, self.operator_, self.rule_)[0] for row in X]
        return np.stack(rows)
