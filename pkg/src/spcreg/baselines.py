"""Classical principal component regression baseline and its SVD machinery."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, _frozen_array
from .selection import make_folds


@dataclass(frozen=True)
class PcaDecomposition:
    """Thin SVD x = u diag(d_singular) v' truncated to q = rank(x).

    Principal component scores are u * d_singular (equivalently x @ v);
    columns of v are the loadings. Each column pair (u_j, v_j) carries the
    deterministic sign convention: the largest-magnitude loading is positive.
    """

    u: np.ndarray
    d_singular: np.ndarray
    v: np.ndarray
    q: int

    def __post_init__(self):
        object.__setattr__(self, "u", _frozen_array(self.u))
        object.__setattr__(self, "d_singular", _frozen_array(self.d_singular))
        object.__setattr__(self, "v", _frozen_array(self.v))
        if np.any(np.diff(self.d_singular) > 0) or np.any(self.d_singular <= 0):
            raise ValueError("singular values must be positive and nonincreasing")

    @property
    def scores(self) -> np.ndarray:
        return self.u * self.d_singular


def pca(d: Dataset) -> PcaDecomposition:
    """Rank-truncated thin SVD of the centered predictor matrix."""
    if not d.centered:
        raise ValueError("pca requires a centered dataset")
    u, s, vt = np.linalg.svd(d.x, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        raise ValueError("predictor matrix is identically zero")
    q = int(np.sum(s > max(d.n, d.p) * np.finfo(float).eps * s[0]))
    v = vt[:q, :].T.copy()
    u = u[:, :q].copy()
    for j in range(q):
        i = int(np.argmax(np.abs(v[:, j])))
        if v[i, j] < 0.0:
            v[:, j] = -v[:, j]
            u[:, j] = -u[:, j]
    return PcaDecomposition(u=u, d_singular=s[:q], v=v, q=q)


@dataclass(frozen=True)
class PcrModel:
    """Least-squares fit of y on the top-k principal component scores."""

    gamma0: float
    coefs: np.ndarray
    v_k: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefs", _frozen_array(self.coefs))
        object.__setattr__(self, "v_k", _frozen_array(self.v_k))

    @property
    def coefficients(self) -> np.ndarray:
        """Predictor-space coefficient vector v_k @ coefs."""
        return self.v_k @ self.coefs

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.gamma0 + np.asarray(x, dtype=np.float64) @ self.coefficients


def pcr_fit(d: Dataset, k: int) -> PcrModel:
    """Regress y on the top-k scores plus an intercept.

    Scores of a centered design are orthogonal with zero column means, so the
    intercept is mean(y) and each coefficient is (z_j' y) / d_j^2.
    """
    dec = pca(d)
    if not 1 <= k <= dec.q:
        raise ValueError(f"k must lie in [1, rank={dec.q}], got {k}")
    z = dec.scores[:, :k]
    coefs = (z.T @ d.y) / dec.d_singular[:k] ** 2
    return PcrModel(gamma0=float(d.y.mean()), coefs=coefs, v_k=dec.v[:, :k])


def pcr_select_components(d: Dataset, k_max: int, n_folds: int = 10,
                          seed: int = 0) -> int:
    """Pick the component count in 1..k_max by K-fold CV (mean fold SSE).

    Candidates are capped at each training fold's rank; ties break toward
    the smaller count.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    plan = make_folds(d.n, min(n_folds, d.n), seed)
    folds = []
    for f in range(1, plan.n_folds + 1):
        test_idx = np.flatnonzero(plan.assignment == f)
        train_idx = np.flatnonzero(plan.assignment != f)
        xtr = d.x[train_idx]
        means = xtr.mean(axis=0)
        ds_tr = Dataset(xtr - means, d.y[train_idx], centered=True)
        dec = pca(ds_tr)
        z = dec.scores
        coefs_full = (z.T @ ds_tr.y) / dec.d_singular**2
        folds.append((dec, coefs_full, float(ds_tr.y.mean()),
                      d.x[test_idx] - means, d.y[test_idx]))

    best_k, best_err = 1, np.inf
    for k in range(1, k_max + 1):
        sse = 0.0
        for dec, coefs_full, ybar, xte, yte in folds:
            kk = min(k, dec.q)
            xi = dec.v[:, :kk] @ coefs_full[:kk]
            err = yte - (ybar + xte @ xi)
            sse += float(err @ err)
        mean_err = sse / plan.n_folds
        if mean_err < best_err:
            best_err = mean_err
            best_k = k
    return best_k
