"""Shared data model: datasets, configuration, fitted models, CV results.

All containers are frozen dataclasses holding read-only float64 arrays, so
instances are safe to share across threads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# a column counts as centered when its mean is below this
CENTERING_TOL = 1e-10


class CsvFormatError(ValueError):
    """A CSV file could not be parsed into a numeric table."""


def _frozen_array(a, dtype=np.float64) -> np.ndarray:
    out = np.array(a, dtype=dtype, order="C")
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Dataset:
    """Predictor matrix (n samples x p predictors) and response vector.

    The response is never centered; the model intercept absorbs its mean.
    `centered` records that every column of x has (numerically) zero mean.
    """

    x: np.ndarray
    y: np.ndarray
    centered: bool = False

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64).ravel()
        if x.ndim != 2:
            raise ValueError(f"x must be 2-d, got shape {x.shape}")
        n, p = x.shape
        if n < 2 or p < 1:
            raise ValueError(f"need n >= 2 samples and p >= 1 predictors, got {n} x {p}")
        if y.shape != (n,):
            raise ValueError(f"y must have length {n}, got {y.shape}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("x and y must be finite (no NaN/Inf)")
        if self.centered:
            worst = float(np.max(np.abs(x.mean(axis=0))))
            if worst >= CENTERING_TOL:
                raise ValueError(
                    f"centered=True but a column mean is {worst:.3e} (>= {CENTERING_TOL})"
                )
        object.__setattr__(self, "x", _frozen_array(x))
        object.__setattr__(self, "y", _frozen_array(y))

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]


def center(x_raw, y_raw, scale: bool = False) -> Dataset:
    """Shift every predictor column to mean zero; y passes through unchanged.

    With scale=True the columns are also divided by their standard deviation
    (population convention); a zero-variance column raises.
    """
    x = np.asarray(x_raw, dtype=np.float64)
    y = np.asarray(y_raw, dtype=np.float64).ravel()
    if x.ndim != 2:
        raise ValueError(f"x must be 2-d, got shape {x.shape}")
    if y.shape[0] != x.shape[0]:
        raise ValueError(f"x has {x.shape[0]} rows but y has length {y.shape[0]}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("x and y must be finite (no NaN/Inf)")
    xc = x - x.mean(axis=0)
    if scale:
        sd = xc.std(axis=0)
        dead = np.flatnonzero(sd == 0.0)
        if dead.size:
            raise ValueError(f"cannot scale zero-variance column(s) {dead.tolist()}")
        xc = xc / sd
    return Dataset(x=xc, y=y, centered=True)


@dataclass(frozen=True)
class SpcrConfig:
    """Tuning and solver knobs.

    k           number of components (k <= p)
    w           trade-off between regression loss (1-w) and reconstruction loss (w)
    zeta        L1/L2 trade-off inside the loading penalty
    weights     p x k positive-or-infinite penalty weights on the loadings;
                None means all ones (the plain, non-adaptive estimator);
                +inf pins the coordinate to exactly zero
    max_sweeps  cap on full coordinate sweeps
    tol         relative objective-change stopping threshold
    seed        reserved for randomized initialization (current init is
                deterministic); also the default fold seed in CV helpers
    """

    k: int
    lambda_beta: float
    lambda_gamma: float
    w: float = 0.1
    zeta: float = 0.01
    weights: np.ndarray | None = None
    max_sweeps: int = 1000
    tol: float = 1e-7
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if not 0.0 < self.w < 1.0:
            raise ValueError("w must lie strictly inside (0, 1)")
        if not 0.0 <= self.zeta < 1.0:
            raise ValueError("zeta must lie in [0, 1)")
        if not self.lambda_beta > 0.0:
            raise ValueError("lambda_beta must be positive")
        if not self.lambda_gamma > 0.0:
            raise ValueError("lambda_gamma must be positive")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be positive")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.weights is not None:
            wts = np.asarray(self.weights, dtype=np.float64)
            if wts.ndim != 2 or wts.shape[1] != self.k:
                raise ValueError(f"weights must be p x {self.k}, got {wts.shape}")
            if np.any(np.isnan(wts)) or np.any(wts <= 0.0):
                raise ValueError("every weight must be > 0 or +inf")
            object.__setattr__(self, "weights", _frozen_array(wts))

    def weight_matrix(self, p: int) -> np.ndarray:
        """Resolved p x k weight matrix (all ones when weights is None)."""
        if self.weights is None:
            return np.ones((p, self.k))
        if self.weights.shape[0] != p:
            raise ValueError(
                f"weights has {self.weights.shape[0]} rows but data has p={p}"
            )
        return np.array(self.weights)


@dataclass(frozen=True)
class SpcrModel:
    """Fitted parameters plus the per-sweep objective trace.

    b is the p x k loading matrix, a the column-orthonormal reconstruction
    matrix, gamma the component coefficients and gamma0 the intercept.
    trace[0] is the objective at initialization, one entry per sweep after.
    madd_count instruments the covariance-update path (0 for the naive path).
    """

    gamma0: float
    gamma: np.ndarray
    b: np.ndarray
    a: np.ndarray
    objective: float
    sweeps_used: int
    converged: bool
    trace: np.ndarray
    flags: tuple = ()
    madd_count: int = 0

    def __post_init__(self):
        b = np.asarray(self.b, dtype=np.float64)
        a = np.asarray(self.a, dtype=np.float64)
        gamma = np.asarray(self.gamma, dtype=np.float64).ravel()
        if b.ndim != 2 or a.shape != b.shape:
            raise ValueError("b and a must be p x k matrices of equal shape")
        if gamma.shape != (b.shape[1],):
            raise ValueError("gamma must have one entry per component")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(a)) and np.all(np.isfinite(gamma))):
            raise ValueError("model parameters must be finite")
        if not np.isfinite(self.objective):
            raise ValueError("objective must be finite")
        k = a.shape[1]
        ortho_err = float(np.max(np.abs(a.T @ a - np.eye(k))))
        if ortho_err >= 1e-8:
            raise ValueError(f"a'a deviates from identity by {ortho_err:.3e}")
        object.__setattr__(self, "b", _frozen_array(b))
        object.__setattr__(self, "a", _frozen_array(a))
        object.__setattr__(self, "gamma", _frozen_array(gamma))
        object.__setattr__(self, "trace", _frozen_array(self.trace))

    @property
    def k(self) -> int:
        return self.b.shape[1]

    @property
    def p(self) -> int:
        return self.b.shape[0]

    def predict(self, x: np.ndarray) -> np.ndarray:
        """gamma0 + x @ (b gamma) for rows centered like the training data."""
        return self.gamma0 + np.asarray(x, dtype=np.float64) @ (self.b @ self.gamma)


def composite_coefficients(model: SpcrModel) -> np.ndarray:
    """Predictor-space coefficients b @ gamma.

    This is the identifiable quantity of the model (invariant under the
    joint sign flip of a loading column and its coefficient); exact zeros
    flag predictors irrelevant to the response.
    """
    return model.b @ model.gamma


@dataclass(frozen=True)
class CvResult:
    """Cross-validation surface over a 10 x 10 penalty grid.

    cv_error[i, j] is the mean over folds of the held-out squared prediction
    error at (lambda_beta_grid[i], lambda_gamma_grid[j]). flagged marks cells
    where some fold fit failed to converge; they are excluded from argmin.
    """

    lambda_beta_grid: np.ndarray
    lambda_gamma_grid: np.ndarray
    cv_error: np.ndarray
    flagged: np.ndarray
    best_beta_index: int
    best_gamma_index: int
    best_model: SpcrModel

    def __post_init__(self):
        bg = np.asarray(self.lambda_beta_grid, dtype=np.float64)
        gg = np.asarray(self.lambda_gamma_grid, dtype=np.float64)
        for grid in (bg, gg):
            if np.any(grid <= 0.0) or np.any(np.diff(grid) <= 0.0):
                raise ValueError("grids must be positive and strictly increasing")
        errs = np.asarray(self.cv_error, dtype=np.float64)
        if errs.shape != (bg.size, gg.size):
            raise ValueError("cv_error shape must match the grids")
        object.__setattr__(self, "lambda_beta_grid", _frozen_array(bg))
        object.__setattr__(self, "lambda_gamma_grid", _frozen_array(gg))
        object.__setattr__(self, "cv_error", _frozen_array(errs))
        object.__setattr__(self, "flagged", _frozen_array(self.flagged, dtype=bool))

    @property
    def best_lambda_beta(self) -> float:
        return float(self.lambda_beta_grid[self.best_beta_index])

    @property
    def best_lambda_gamma(self) -> float:
        return float(self.lambda_gamma_grid[self.best_gamma_index])


@dataclass(frozen=True)
class EvalMetrics:
    """Prediction and support-recovery summary for one fitted model."""

    mse: float
    tpr: float
    tnr: float  # NaN when the true support covers every predictor

    def __post_init__(self):
        if self.mse < 0.0:
            raise ValueError("mse must be nonnegative")
        for name in ("tpr", "tnr"):
            v = getattr(self, name)
            if not np.isnan(v) and not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


def load_csv(path, response, header: bool = True):
    """Read a numeric CSV into (x, y, predictor_names, response_name).

    `response` selects the response column by name (requires a header row) or
    by 0-based index. Remaining columns become predictors. Raises
    CsvFormatError with a row/column diagnostic on anything unparseable.
    """
    path = Path(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]  # drop blank lines
    if not rows:
        raise CsvFormatError(f"{path}: empty file")

    if header:
        names = [c.strip() for c in rows[0]]
        body = rows[1:]
        first_row = 2  # 1-based line number of the first data row
    else:
        names = [f"x{i}" for i in range(len(rows[0]))]
        body = rows
        first_row = 1
    if not body:
        raise CsvFormatError(f"{path}: no data rows")

    ncol = len(names)
    if isinstance(response, str):
        if not header:
            raise CsvFormatError("response selected by name but header=False")
        if response not in names:
            raise CsvFormatError(f"response column {response!r} not in header {names}")
        resp_idx = names.index(response)
    else:
        resp_idx = int(response)
        if not -ncol <= resp_idx < ncol:
            raise CsvFormatError(f"response index {resp_idx} out of range for {ncol} columns")
        resp_idx %= ncol
    if ncol < 2:
        raise CsvFormatError(f"{path}: need a response plus at least one predictor")

    data = np.empty((len(body), ncol))
    for i, row in enumerate(body):
        if len(row) != ncol:
            raise CsvFormatError(
                f"{path}: row {first_row + i} has {len(row)} fields, expected {ncol}"
            )
        for j, cell in enumerate(row):
            try:
                data[i, j] = float(cell)
            except ValueError:
                raise CsvFormatError(
                    f"{path}: row {first_row + i}, column {j + 1} ({names[j]!r}): "
                    f"cannot parse {cell!r} as a number"
                ) from None

    keep = [j for j in range(ncol) if j != resp_idx]
    x = data[:, keep]
    y = data[:, resp_idx]
    predictor_names = [names[j] for j in keep]
    return x, y, predictor_names, names[resp_idx]
