"""Blockwise coordinate descent for the joint regression/reconstruction fit.

The estimator minimizes, over (b, gamma, gamma0) and column-orthonormal a,

    (1-w) sum_i (y_i - gamma0 - gamma' b' x_i)^2
  +   w   sum_i || x_i - a b' x_i ||^2
  + lam_b (1-zeta) sum_{l,j} w_lj |b_lj|  +  lam_b zeta ||b||_F^2
  + lam_g ||gamma||_1

by cyclic soft-thresholded coordinate updates on b and gamma, an exact polar
(orthogonal Procrustes) step for a, and a closed-form intercept. Losses are
unnormalized sums, so penalty levels are n-dependent.

Two equivalent paths are provided: a plain numpy reference that maintains
explicit residual vectors (`method="naive"`), and a compiled path driven by
Gram-matrix covariance updates (`method="cov"`, the default) whose per-sweep
work scales with the active set.
"""

from __future__ import annotations

import warnings

import numpy as np

from . import _kernels
from .data import Dataset, SpcrConfig, SpcrModel


class NonFiniteError(RuntimeError):
    """The solver produced a non-finite value; the message names the block."""


def soft_threshold(z: float, eta: float) -> float:
    """sign(z) * (|z| - eta)_+, the L1 proximal operator."""
    if z > eta:
        return z - eta
    if z < -eta:
        return z + eta
    return 0.0


def objective(d: Dataset, c: SpcrConfig, b, gamma, gamma0, a) -> float:
    """Penalized objective at the given parameters.

    Coordinates with infinite weight contribute zero penalty while their
    loading is zero (and +inf if the pin is violated).
    """
    b = np.asarray(b, dtype=np.float64)
    gamma = np.asarray(gamma, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    if not (np.all(np.isfinite(b)) and np.all(np.isfinite(gamma))
            and np.all(np.isfinite(a)) and np.isfinite(gamma0)):
        raise ValueError("objective requires finite parameter values")
    wts = c.weight_matrix(d.p)
    resid = d.y - gamma0 - d.x @ (b @ gamma)
    recon = d.x - (d.x @ b) @ a.T
    finite = np.isfinite(wts)
    l1 = float(np.sum(wts[finite] * np.abs(b[finite])))
    if np.any(b[~finite] != 0.0):
        l1 = np.inf
    return (
        (1.0 - c.w) * float(resid @ resid)
        + c.w * float(np.sum(recon * recon))
        + c.lambda_beta * (1.0 - c.zeta) * l1
        + c.lambda_beta * c.zeta * float(np.sum(b * b))
        + c.lambda_gamma * float(np.sum(np.abs(gamma)))
    )


def _fix_column_signs(m: np.ndarray) -> np.ndarray:
    """Flip columns so each column's largest-magnitude entry is positive."""
    out = np.array(m, dtype=np.float64)
    for j in range(out.shape[1]):
        col = out[:, j]
        if np.any(col != 0.0):
            i = int(np.argmax(np.abs(col)))
            if col[i] < 0.0:
                out[:, j] = -col
    return out


def initial_parameters(d: Dataset, c: SpcrConfig):
    """Deterministic start near the plain PCA solution.

    Loadings are the top-k right singular vectors of x (sign-fixed, with
    rank-deficient directions completed canonically), gamma = 0, the
    intercept is mean(y), and a is the orthonormalized loading matrix.
    Coordinates pinned by an infinite weight start at exactly zero.
    """
    p, k = d.p, c.k
    if k > p:
        raise ValueError(f"k={k} exceeds p={p}")
    _u, s, vt = np.linalg.svd(d.x, full_matrices=False)
    rank = int(np.sum(s > 1e-12 * s[0])) if s.size and s[0] > 0.0 else 0
    r = min(rank, k)
    v = np.ascontiguousarray(vt[:r, :].T)
    if r < k:
        fill = _kernels.gram_schmidt_fill(v, k - r)
        v = np.hstack([v, fill])
    b = _fix_column_signs(v)
    pinned = np.isinf(c.weight_matrix(p))
    if pinned.any():
        b[pinned] = 0.0
        a = _kernels.polar_orthonormal(np.ascontiguousarray(b))
    else:
        a = b.copy()
    return b, np.zeros(k), float(d.y.mean()), a


class SolverState:
    """Explicit-residual caches for the naive coordinate-descent path.

    scores[i, j] = b_j' x_i, targets[i, j] = a_j' x_i, resid is the
    regression residual vector, recon_resid = targets - scores, col_sq the
    column squared norms of x. Caches are maintained incrementally by the
    update operations and can be rebuilt from scratch with refresh_caches().
    """

    def __init__(self, d: Dataset, c: SpcrConfig, b=None, gamma=None,
                 gamma0=None, a=None):
        self.d = d
        self.c = c
        self.x = d.x
        self.y = d.y
        if b is None or gamma is None or gamma0 is None or a is None:
            ib, ig, ig0, ia = initial_parameters(d, c)
            b = ib if b is None else b
            gamma = ig if gamma is None else gamma
            gamma0 = ig0 if gamma0 is None else gamma0
            a = ia if a is None else a
        self.b = np.array(b, dtype=np.float64)
        self.gamma = np.array(gamma, dtype=np.float64)
        self.gamma0 = float(gamma0)
        self.a = np.array(a, dtype=np.float64)
        self.weights = c.weight_matrix(d.p)
        self.gram = d.x.T @ d.x
        self.col_sq = np.einsum("ij,ij->j", d.x, d.x)
        self.trace: list[float] = []
        self.skips = 0
        self.refresh_caches()

    def refresh_caches(self):
        self.scores = self.x @ self.b
        self.targets = self.x @ self.a
        self.resid = self.y - self.gamma0 - self.scores @ self.gamma
        self.recon_resid = self.targets - self.scores

    def objective_value(self) -> float:
        return objective(self.d, self.c, self.b, self.gamma, self.gamma0, self.a)


def update_beta(state: SolverState, l: int, j: int) -> float:
    """Closed-form soft-thresholded update of loading (l, j); updates caches.

    Returns the new coordinate value. A pinned coordinate (infinite weight)
    is exactly zero without evaluating the numerator. A zero denominator
    (possible only for an identically-zero column with no ridge term) skips
    the coordinate and records it on state.skips.
    """
    c = state.c
    wlj = state.weights[l, j]
    bcur = state.b[l, j]
    if np.isinf(wlj):
        return 0.0
    gj = state.gamma[j]
    csq = state.col_sq[l]
    den = ((1.0 - c.w) * gj * gj + c.w) * csq + c.lambda_beta * c.zeta
    if den <= 0.0:
        state.skips += 1
        return bcur
    xl = state.x[:, l]
    dot_reg = float(xl @ state.resid) + gj * bcur * csq
    dot_rec = float(xl @ state.recon_resid[:, j]) + bcur * csq
    num = (1.0 - c.w) * gj * dot_reg + c.w * dot_rec
    bnew = soft_threshold(num, 0.5 * c.lambda_beta * wlj * (1.0 - c.zeta)) / den
    delta = bnew - bcur
    if delta != 0.0:
        state.b[l, j] = bnew
        state.scores[:, j] += delta * xl
        state.recon_resid[:, j] -= delta * xl
        if gj != 0.0:
            state.resid -= gj * delta * xl
    return bnew


def update_gamma(state: SolverState, j: int) -> float:
    """Closed-form soft-thresholded update of coefficient j; updates caches.

    A dead component (zero score vector, i.e. b_j = 0) gets coefficient
    exactly zero with no division.
    """
    c = state.c
    sj = state.scores[:, j]
    sq = float(sj @ sj)
    gcur = state.gamma[j]
    if sq <= 0.0:
        if gcur != 0.0:
            state.gamma[j] = 0.0
            state.resid += gcur * sj
        return 0.0
    num = (1.0 - c.w) * (float(sj @ state.resid) + gcur * sq)
    gnew = soft_threshold(num, 0.5 * c.lambda_gamma) / ((1.0 - c.w) * sq)
    delta = gnew - gcur
    if delta != 0.0:
        state.gamma[j] = gnew
        state.resid -= delta * sj
    return gnew


def update_a(d: Dataset, b) -> np.ndarray:
    """Orthonormal matrix minimizing the reconstruction term for fixed b.

    The polar factor of (x'x) b; null directions are completed
    deterministically (b = 0 returns the first k canonical basis vectors).
    """
    b = np.asarray(b, dtype=np.float64)
    if not np.all(np.isfinite(b)):
        raise ValueError("b must be finite")
    if b.shape[1] > d.p:
        raise ValueError("more columns than predictors")
    m = (d.x.T @ d.x) @ b
    return _kernels.polar_orthonormal(np.ascontiguousarray(m))


def _a_step(state: SolverState):
    state.a = _kernels.polar_orthonormal(np.ascontiguousarray(state.gram @ state.b))
    state.targets = state.x @ state.a
    state.recon_resid = state.targets - state.scores


def update_gamma0(state: SolverState) -> float:
    """Closed-form intercept: mean of the response minus the fitted scores."""
    gnew = float(np.mean(state.y - state.scores @ state.gamma))
    delta = gnew - state.gamma0
    if delta != 0.0:
        state.gamma0 = gnew
        state.resid -= delta
    return gnew


def _canonicalize_signs(b, gamma, a):
    # the joint flip of (b_j, gamma_j, a_j) leaves the objective unchanged;
    # fix each column so its largest-magnitude loading is positive
    for j in range(b.shape[1]):
        col = b[:, j]
        if np.any(col != 0.0):
            i = int(np.argmax(np.abs(col)))
            if col[i] < 0.0:
                b[:, j] = -col
                gamma[j] = -gamma[j]
                a[:, j] = -a[:, j]


_BAD_BLOCK = {
    1: "loading (b) coordinate update",
    2: "coefficient (gamma) coordinate update",
    3: "objective evaluation after the reconstruction/intercept step",
}


def fit(d: Dataset, c: SpcrConfig, method: str = "cov") -> SpcrModel:
    """Run blockwise descent until the relative objective change drops below
    tol or max_sweeps is hit; deterministic given (d, c).

    method="cov" (default) uses the compiled covariance-update path,
    method="naive" the explicit-residual reference path; the two agree to
    floating-point noise.
    """
    if not d.centered:
        raise ValueError("fit requires a centered dataset (see center())")
    if c.k > d.p:
        raise ValueError(f"k={c.k} exceeds p={d.p}")
    c.weight_matrix(d.p)  # validates the weight shape early
    if method == "cov":
        return _fit_cov(d, c)
    if method == "naive":
        return _fit_naive(d, c)
    raise ValueError(f"unknown method {method!r} (expected 'cov' or 'naive')")


def _fit_naive(d: Dataset, c: SpcrConfig) -> SpcrModel:
    state = SolverState(d, c)
    state.trace.append(state.objective_value())
    converged = False
    sweeps = 0
    for sweep in range(1, c.max_sweeps + 1):
        sweeps = sweep
        for j in range(c.k):
            for l in range(d.p):
                update_beta(state, l, j)
        if not np.all(np.isfinite(state.b)):
            raise NonFiniteError(f"non-finite value in {_BAD_BLOCK[1]} (sweep {sweep})")
        for j in range(c.k):
            update_gamma(state, j)
        if not np.all(np.isfinite(state.gamma)):
            raise NonFiniteError(f"non-finite value in {_BAD_BLOCK[2]} (sweep {sweep})")
        _a_step(state)
        update_gamma0(state)
        obj = state.objective_value()
        if not np.isfinite(obj):
            raise NonFiniteError(f"non-finite value in {_BAD_BLOCK[3]} (sweep {sweep})")
        state.trace.append(obj)
        if abs(state.trace[-1] - state.trace[-2]) <= c.tol * (1.0 + abs(state.trace[-2])):
            converged = True
            break
    if state.skips:
        warnings.warn(f"skipped {state.skips} zero-denominator coordinate updates")
    b, gamma, a = state.b.copy(), state.gamma.copy(), state.a.copy()
    _canonicalize_signs(b, gamma, a)
    return SpcrModel(
        gamma0=state.gamma0, gamma=gamma, b=b, a=a,
        objective=float(state.trace[-1]), sweeps_used=sweeps,
        converged=converged, trace=np.asarray(state.trace), madd_count=0,
    )


def _fit_cov(d: Dataset, c: SpcrConfig) -> SpcrModel:
    b, gamma, gamma0, a = initial_parameters(d, c)
    x, y = d.x, d.y
    gram = x.T @ x
    xty = x.T @ y
    cs = x.sum(axis=0)
    weights = np.ascontiguousarray(c.weight_matrix(d.p))
    trace_buf = np.empty(c.max_sweeps + 1)
    sweeps, converged, madds, skips, bad, gamma0 = _kernels.fit_loop(
        gram, xty, cs, float(y.sum()), float(y @ y), d.n,
        b, gamma, a, gamma0, weights,
        c.w, c.zeta, c.lambda_beta, c.lambda_gamma,
        c.max_sweeps, c.tol, trace_buf,
    )
    if bad:
        raise NonFiniteError(f"non-finite value in {_BAD_BLOCK[bad]} (sweep {sweeps})")
    if skips:
        warnings.warn(f"skipped {skips} zero-denominator coordinate updates")
    trace = trace_buf[: sweeps + 1].copy()
    _canonicalize_signs(b, gamma, a)
    return SpcrModel(
        gamma0=float(gamma0), gamma=gamma, b=b, a=a,
        objective=float(trace[-1]), sweeps_used=int(sweeps),
        converged=bool(converged), trace=trace, madd_count=int(madds),
    )
