"""Synthetic benchmark cases, seeded Monte Carlo replication, and metrics.

Five generative settings are shipped ("1a", "1b", "2", "3a", "3b"): normal
predictors with a case-specific covariance, a sparse linear response, and
noise level sigma. Replication r of a run draws its data from seed
base_seed + r through the package's counter-based generator, so reports are
reproducible from the manifest alone.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import published
from . import rng as _rng
from .adaptive import adaptive_weights
from .baselines import pcr_fit, pcr_select_components
from .data import Dataset, EvalMetrics, SpcrConfig, composite_coefficients
from .selection import cross_validate, make_folds

CASE_IDS = ("1a", "1b", "2", "3a", "3b")
METHOD_NAMES = ("spcr", "aspcr", "pcr")

# sparse approximations of covariance-block eigenvectors used by cases 2 and 3
_NU1 = np.array([-1.0, 0.0, 1.0, 1.0, 0.0, -1.0, -1.0, 0.0, 1.0])
_NU2_A = np.ones(6)
_NU2_B = np.array([1.0, 0.0, -1.0, -1.0, 0.0, 1.0])

ZERO_TOL = 1e-12  # |coefficient| above this counts as nonzero


@dataclass(frozen=True)
class SimCase:
    """Generative description: x ~ N(0, cov), y = x' true_xi + N(0, sigma^2)."""

    case_id: str
    p: int
    sigma: float
    n: int
    true_xi: np.ndarray
    cov: np.ndarray


def _ar1_block(size: int, rho: float = 0.9) -> np.ndarray:
    idx = np.arange(size)
    return rho ** np.abs(idx[:, None] - idx[None, :])


def _block_diag(*blocks) -> np.ndarray:
    total = sum(b.shape[0] for b in blocks)
    out = np.zeros((total, total))
    at = 0
    for b in blocks:
        s = b.shape[0]
        out[at:at + s, at:at + s] = b
        at += s
    return out


def case_spec(case_id: str, n: int, sigma: float) -> SimCase:
    """Covariance and true coefficient vector for one benchmark case.

    sigma = 0 is allowed as the noiseless limit (the response becomes an
    exact linear function of the predictors).
    """
    if sigma < 0.0:
        raise ValueError("sigma must be nonnegative")
    if case_id == "1a":
        cov = np.eye(10)
        xi = np.zeros(10)
        xi[0], xi[1] = 2.0, 1.0
    elif case_id == "1b":
        cov = np.eye(10)
        cov[1, 1] = 9.0
        xi = np.zeros(10)
        xi[0], xi[1] = 8.0, 1.0
    elif case_id == "2":
        cov = _block_diag(_ar1_block(9), np.eye(11))
        xi = 4.0 * np.concatenate([_NU1, np.zeros(11)])
    elif case_id in ("3a", "3b"):
        cov = _block_diag(_ar1_block(9), _ar1_block(6), np.eye(15))
        nu2 = _NU2_A if case_id == "3a" else _NU2_B
        xi = 4.0 * np.concatenate([_NU1, nu2, np.zeros(15)])
    else:
        raise ValueError(f"unknown case {case_id!r} (expected one of {CASE_IDS})")
    return SimCase(case_id=case_id, p=cov.shape[0], sigma=float(sigma),
                   n=int(n), true_xi=xi, cov=cov)


def make_case(case_id: str, n: int, sigma: float, seed: int,
              n_test: int = 1000):
    """Draw (train, test-pool) datasets for a case, deterministically per seed.

    Predictors come from the Cholesky factor of the case covariance applied
    to Box-Muller normals; draw order is train predictors, train noise, test
    predictors, test noise. Returned datasets are uncentered.
    """
    spec = case_spec(case_id, n, sigma)
    gen = _rng.philox(seed, _rng.DATA_STREAM)
    chol = np.linalg.cholesky(spec.cov)
    xtr = _rng.normal_matrix(gen, n, spec.p) @ chol.T
    ytr = xtr @ spec.true_xi + sigma * _rng.standard_normals(gen, n)
    xte = _rng.normal_matrix(gen, n_test, spec.p) @ chol.T
    yte = xte @ spec.true_xi + sigma * _rng.standard_normals(gen, n_test)
    return Dataset(xtr, ytr, centered=False), Dataset(xte, yte, centered=False)


def evaluate_mse(predictions, y_true) -> float:
    """Mean squared prediction error over the test pool."""
    predictions = np.asarray(predictions, dtype=np.float64)
    y_true = np.asarray(y_true, dtype=np.float64)
    if predictions.shape != y_true.shape:
        raise ValueError("prediction and truth lengths differ")
    diff = predictions - y_true
    return float(diff @ diff) / y_true.size


def support_metrics(xi_hat, xi_true, zero_tol: float = ZERO_TOL):
    """(TPR, TNR) of the estimated against the true coefficient support.

    An estimate counts as nonzero when its magnitude exceeds zero_tol (the
    solver produces exact zeros; the tolerance only guards float dust in the
    composite product). A side with no true members is undefined and comes
    back as NaN.
    """
    xi_hat = np.asarray(xi_hat, dtype=np.float64)
    xi_true = np.asarray(xi_true, dtype=np.float64)
    if xi_hat.shape != xi_true.shape:
        raise ValueError("coefficient vectors must have equal length")
    hat_nz = np.abs(xi_hat) > zero_tol
    true_nz = xi_true != 0.0
    n_pos = int(true_nz.sum())
    n_neg = int((~true_nz).sum())
    tpr = float((hat_nz & true_nz).sum() / n_pos) if n_pos else float("nan")
    tnr = float((~hat_nz & ~true_nz).sum() / n_neg) if n_neg else float("nan")
    return tpr, tnr


def evaluate_model(xi_hat, predictions, y_true, xi_true) -> EvalMetrics:
    tpr, tnr = support_metrics(xi_hat, xi_true)
    return EvalMetrics(mse=evaluate_mse(predictions, y_true), tpr=tpr, tnr=tnr)


@dataclass
class BenchReport:
    """Per-replication rows plus aggregated statistics and reference values."""

    cases: tuple
    methods: tuple
    n_reps: int
    base_seed: int
    k: int
    n: int
    sigma: float
    n_folds: int
    spacing: str
    generator: str
    rows: list
    failures: list

    def stats(self) -> dict:
        """(case, method) -> mean/sd of each metric over successful reps."""
        out = {}
        for case in self.cases:
            for method in self.methods:
                ok = [r for r in self.rows
                      if r["case"] == case and r["method"] == method
                      and not r["error"]]
                if not ok:
                    continue
                entry = {"replications": len(ok)}
                for metric in ("mse", "tpr", "tnr"):
                    vals = np.array([r[metric] for r in ok])
                    entry[f"{metric}_mean"] = float(np.mean(vals))
                    entry[f"{metric}_sd"] = (
                        float(np.std(vals, ddof=1)) if len(ok) > 1 else 0.0
                    )
                out[(case, method)] = entry
        return out

    def references(self) -> dict:
        return {case: published.reference_for(case, self.k, self.n, self.sigma)
                for case in self.cases}


def _spcr_row(model, cv, xte, yte, xi_true):
    metrics = evaluate_model(composite_coefficients(model), model.predict(xte),
                             yte, xi_true)
    active = int(np.count_nonzero(model.gamma))
    return metrics, active, model.converged, cv


def _replicate(case_id, methods, k, n, sigma, seed, n_folds, spacing,
               standardize=False):
    """All requested method rows for one replication seed."""
    spec = case_spec(case_id, n, sigma)
    train, test = make_case(case_id, n, sigma, seed)
    means = train.x.mean(axis=0)
    xtr = train.x - means
    xte = test.x - means
    if standardize:
        sds = xtr.std(axis=0)
        xtr = xtr / sds
        xte = xte / sds
    ds = Dataset(xtr, train.y, centered=True)
    yte = test.y

    def base_row(method):
        return {"case": case_id, "method": method, "rep": None, "seed": seed,
                "mse": float("nan"), "tpr": float("nan"), "tnr": float("nan"),
                "lambda_beta": float("nan"), "lambda_gamma": float("nan"),
                "n_components": 0, "converged": False, "error": ""}

    rows = []
    want_spcr = "spcr" in methods
    want_aspcr = "aspcr" in methods
    if want_spcr or want_aspcr:
        config = SpcrConfig(k=k, lambda_beta=1.0, lambda_gamma=1.0, seed=seed)
        pilot_cv = pilot = None
        pilot_err = ""
        try:
            plan = make_folds(ds.n, n_folds, seed)
            pilot_cv = cross_validate(ds, config, plan, spacing=spacing)
            pilot = pilot_cv.best_model
        except Exception as exc:  # recorded, replication continues
            pilot_err = f"pilot stage: {exc}"

        if want_spcr:
            row = base_row("spcr")
            if pilot is None:
                row["error"] = pilot_err
            else:
                metrics, active, conv, cv = _spcr_row(pilot, pilot_cv, xte, yte,
                                                      spec.true_xi)
                row.update(mse=metrics.mse, tpr=metrics.tpr, tnr=metrics.tnr,
                           lambda_beta=cv.best_lambda_beta,
                           lambda_gamma=cv.best_lambda_gamma,
                           n_components=active, converged=conv)
            rows.append(row)

        if want_aspcr:
            row = base_row("aspcr")
            if pilot is None:
                row["error"] = pilot_err
            else:
                try:
                    wts = adaptive_weights(pilot)
                    if np.all(np.isinf(wts)):
                        # degenerate pilot: the pass-through still counts
                        final, cv = pilot, pilot_cv
                    else:
                        cv = cross_validate(ds, replace(config, weights=wts),
                                            plan, spacing=spacing)
                        final = cv.best_model
                    metrics, active, conv, cv = _spcr_row(final, cv, xte, yte,
                                                          spec.true_xi)
                    row.update(mse=metrics.mse, tpr=metrics.tpr,
                               tnr=metrics.tnr,
                               lambda_beta=cv.best_lambda_beta,
                               lambda_gamma=cv.best_lambda_gamma,
                               n_components=active, converged=conv)
                except Exception as exc:
                    row["error"] = f"adaptive stage: {exc}"
            rows.append(row)

    if "pcr" in methods:
        row = base_row("pcr")
        try:
            k_sel = pcr_select_components(ds, k_max=k, n_folds=10, seed=seed)
            pm = pcr_fit(ds, min(k_sel, k))
            metrics = evaluate_model(pm.coefficients, pm.predict(xte), yte,
                                     spec.true_xi)
            row.update(mse=metrics.mse, tpr=metrics.tpr, tnr=metrics.tnr,
                       n_components=k_sel, converged=True)
        except Exception as exc:
            row["error"] = f"pcr: {exc}"
        rows.append(row)
    return rows


def run_benchmark(case_ids, methods, n_reps: int, base_seed: int, n: int,
                  sigma: float, k: int, n_folds: int = 5,
                  spacing: str = "linear", standardize: bool = False,
                  threads: int = 1) -> BenchReport:
    """Seeded Monte Carlo benchmark across cases and methods.

    Replication r uses seed base_seed + r for data and fold assignment. Rows
    with a recorded error are excluded from the aggregated statistics but kept
    in the report with their message. Aggregation is keyed by (case, rep), so
    results do not depend on the execution order or thread count.
    """
    case_ids = tuple(case_ids)
    methods = tuple(methods)
    if n_reps < 1:
        raise ValueError("need at least one replication")
    for case in case_ids:
        case_spec(case, n, sigma)  # validates ids eagerly
    for m in methods:
        if m not in METHOD_NAMES:
            raise ValueError(f"unknown method {m!r} (expected one of {METHOD_NAMES})")

    jobs = [(case, rep) for case in case_ids for rep in range(n_reps)]

    def runner(job):
        case, rep = job
        rows = _replicate(case, methods, k, n, sigma, base_seed + rep,
                          n_folds, spacing, standardize=standardize)
        for r in rows:
            r["rep"] = rep
        return rows

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_job = list(pool.map(runner, jobs))
    else:
        per_job = [runner(job) for job in jobs]

    rows = [r for chunk in per_job for r in chunk]
    failures = [r for r in rows if r["error"]]
    return BenchReport(
        cases=case_ids, methods=methods, n_reps=n_reps, base_seed=base_seed,
        k=k, n=n, sigma=float(sigma), n_folds=n_folds, spacing=spacing,
        generator=_rng.GENERATOR_NAME, rows=rows, failures=failures,
    )
