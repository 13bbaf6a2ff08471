"""Penalty-grid construction and K-fold cross-validation.

Grids span [0.001 * lambda_max, lambda_max] in 10 steps, where lambda_max is
the smallest penalty that zeroes the whole coordinate block in one pass at the
initialization point (read off the soft-threshold conditions). Spacing is
linear by default, with a geometric ("log") alternative.

The CV criterion is the mean over folds of the held-out squared prediction
error; every cell is fit cold (no warm starts), and held-out predictors are
centered with training-fold means.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import rng as _rng
from .data import CvResult, Dataset, SpcrConfig, _frozen_array
from .solver import fit, initial_parameters

GRID_SIZE = 10
MIN_RATIO = 1e-3


@dataclass(frozen=True)
class FoldPlan:
    """Assignment of samples to folds 1..n_folds, sizes differing by at most 1."""

    n_folds: int
    assignment: np.ndarray
    seed: int

    def __post_init__(self):
        if self.n_folds < 2:
            raise ValueError("need at least 2 folds")
        assign = np.asarray(self.assignment, dtype=np.int64)
        if assign.ndim != 1 or assign.size < self.n_folds:
            raise ValueError("assignment must cover at least one sample per fold")
        if assign.min() < 1 or assign.max() > self.n_folds:
            raise ValueError("fold ids must lie in 1..n_folds")
        sizes = np.bincount(assign, minlength=self.n_folds + 1)[1:]
        if sizes.min() == 0:
            raise ValueError("every fold must receive at least one sample")
        if sizes.max() - sizes.min() > 1:
            raise ValueError("fold sizes may differ by at most 1")
        object.__setattr__(self, "assignment", _frozen_array(assign, dtype=np.int64))

    @property
    def n(self) -> int:
        return self.assignment.size


def make_folds(n: int, n_folds: int, seed: int) -> FoldPlan:
    """Seeded random permutation dealt round-robin into folds 1..n_folds."""
    if n_folds < 2 or n_folds > n:
        raise ValueError(f"n_folds must lie in [2, n={n}]")
    perm = _rng.philox(seed, _rng.FOLD_STREAM).permutation(n)
    assignment = np.empty(n, dtype=np.int64)
    assignment[perm] = np.arange(n) % n_folds + 1
    return FoldPlan(n_folds=n_folds, assignment=assignment, seed=seed)


def _spaced(lam_max: float, spacing: str) -> np.ndarray:
    lam_min = MIN_RATIO * lam_max
    if spacing == "linear":
        return np.linspace(lam_min, lam_max, GRID_SIZE)
    if spacing == "log":
        return np.geomspace(lam_min, lam_max, GRID_SIZE)
    raise ValueError(f"unknown spacing {spacing!r} (expected 'linear' or 'log')")


def lambda_grid(d: Dataset, c: SpcrConfig, spacing: str = "linear"):
    """10-point penalty grids for the loading and coefficient blocks.

    lambda_max for each block is twice the largest soft-threshold numerator at
    the initialization point (so the block is zeroed in the first pass);
    infinite-weight coordinates are excluded. A vanishing maximum (response
    orthogonal to every initial score, or an all-zero numerator) falls back to
    a unit grid with a warning.
    """
    b0, _gamma0_vec, _g0, a0 = initial_parameters(d, c)
    x, y = d.x, d.y
    wts = c.weight_matrix(d.p)

    scores = x @ b0
    yc = y - y.mean()
    # per-column dots, matching the coefficient update's arithmetic exactly
    # so fitting at the returned maximum zeroes the block in one pass
    g_max = 2.0 * (1.0 - c.w) * max(
        abs(float(scores[:, j] @ yc)) for j in range(c.k))

    # loading threshold at initialization: gamma = 0 kills the regression
    # part, leaving the reconstruction pull w * (x_l' rec_resid_j + b_lj |x_l|^2)
    rec_resid = x @ a0 - scores
    col_sq = np.einsum("ij,ij->j", x, x)
    num = c.w * (x.T @ rec_resid + b0 * col_sq[:, None])
    with np.errstate(divide="ignore"):
        scaled = np.abs(num) / (wts * (1.0 - c.zeta))
    scaled[np.isinf(wts)] = 0.0
    b_max = 2.0 * float(np.max(scaled))

    if b_max <= 0.0:
        warnings.warn("loading penalty threshold is zero; using a unit grid")
        b_max = 1.0
    if g_max <= 0.0:
        warnings.warn("coefficient penalty threshold is zero; using a unit grid")
        g_max = 1.0
    return _spaced(b_max, spacing), _spaced(g_max, spacing)


def _fold_fit_data(d: Dataset, train_idx, standardize: bool):
    xtr = d.x[train_idx]
    means = xtr.mean(axis=0)
    xtr = xtr - means
    if standardize:
        sds = xtr.std(axis=0)
        dead = np.flatnonzero(sds == 0.0)
        if dead.size:
            raise ValueError(f"zero-variance column(s) {dead.tolist()} in a training fold")
        xtr = xtr / sds
    else:
        sds = None
    return Dataset(xtr, d.y[train_idx], centered=True), means, sds


def cross_validate(d: Dataset, c: SpcrConfig, plan: FoldPlan,
                   spacing: str = "linear", grids=None,
                   standardize: bool = False, method: str = "cov") -> CvResult:
    """CV surface over the 10 x 10 grid plus the best refit on all data.

    Cells where any fold fit hits the sweep cap without converging keep their
    error value but are flagged and excluded from the argmin. Exact ties break
    toward larger lambda_beta, then larger lambda_gamma (the sparser model).
    """
    if plan.n != d.n:
        raise ValueError(f"fold plan covers {plan.n} samples, data has {d.n}")
    if grids is None:
        beta_grid, gamma_grid = lambda_grid(d, c, spacing=spacing)
    else:
        beta_grid, gamma_grid = (np.asarray(g, dtype=np.float64) for g in grids)

    folds = []
    for f in range(1, plan.n_folds + 1):
        test_idx = np.flatnonzero(plan.assignment == f)
        train_idx = np.flatnonzero(plan.assignment != f)
        ds_tr, means, sds = _fold_fit_data(d, train_idx, standardize)
        xte = d.x[test_idx] - means
        if sds is not None:
            xte = xte / sds
        folds.append((ds_tr, xte, d.y[test_idx]))

    nb, ng = beta_grid.size, gamma_grid.size
    cv_error = np.zeros((nb, ng))
    flagged = np.zeros((nb, ng), dtype=bool)
    for bi in range(nb):
        for gi in range(ng):
            cell = replace(c, lambda_beta=float(beta_grid[bi]),
                           lambda_gamma=float(gamma_grid[gi]))
            sse = 0.0
            ok = True
            for ds_tr, xte, yte in folds:
                m = fit(ds_tr, cell, method=method)
                ok = ok and m.converged
                err = yte - m.predict(xte)
                sse += float(err @ err)
            cv_error[bi, gi] = sse / plan.n_folds
            flagged[bi, gi] = not ok

    if flagged.all():
        raise RuntimeError("every grid cell failed to converge; nothing to select")
    best_bi = best_gi = -1
    best_val = np.inf
    for bi in reversed(range(nb)):          # larger lambda_beta wins ties
        for gi in reversed(range(ng)):      # then larger lambda_gamma
            if not flagged[bi, gi] and cv_error[bi, gi] < best_val:
                best_val = cv_error[bi, gi]
                best_bi, best_gi = bi, gi

    best_config = replace(c, lambda_beta=float(beta_grid[best_bi]),
                          lambda_gamma=float(gamma_grid[best_gi]))
    best_model = fit(d, best_config, method=method)
    return CvResult(
        lambda_beta_grid=beta_grid, lambda_gamma_grid=gamma_grid,
        cv_error=cv_error, flagged=flagged,
        best_beta_index=best_bi, best_gamma_index=best_gi,
        best_model=best_model,
    )
