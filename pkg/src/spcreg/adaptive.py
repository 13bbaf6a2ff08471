"""Two-stage adaptive pipeline: pilot fit, reciprocal weights, refit.

The refit penalizes each loading coordinate by 1 / |pilot estimate|, so
coordinates the pilot already set to zero are pinned (infinite weight) and the
refit's support can only shrink. Weights are used exactly as the reciprocals,
with no capping: tiny pilot estimates legitimately produce enormous weights.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .data import Dataset, SpcrConfig, SpcrModel
from .selection import FoldPlan, cross_validate
from .solver import fit

DEGENERATE_FLAG = "degenerate_adaptive"


def adaptive_weights(pilot: SpcrModel) -> np.ndarray:
    """Coordinate weights 1/|b_lj| from a pilot fit; zeros map to +inf."""
    b = pilot.b
    out = np.full(b.shape, np.inf)
    nz = b != 0.0
    out[nz] = 1.0 / np.abs(b[nz])
    return out


def fit_aspcr(d: Dataset, c: SpcrConfig, cv_plan: FoldPlan | None = None,
              spacing: str = "linear", method: str = "cov") -> SpcrModel:
    """Pilot fit at c's penalty pair, then the weighted refit.

    c must be a pilot-stage configuration (no weights set). When cv_plan is
    given, the refit's penalties are re-selected by cross-validation on fresh
    grids built under the adaptive weights; otherwise the pilot pair is
    reused. A pilot with an all-zero loading matrix cannot be reweighted; the
    pilot itself is returned, flagged "degenerate_adaptive".
    """
    if c.weights is not None:
        raise ValueError("pilot configuration must not carry adaptive weights")
    pilot = fit(d, c, method=method)
    wts = adaptive_weights(pilot)
    if np.all(np.isinf(wts)):
        return replace(pilot, flags=pilot.flags + (DEGENERATE_FLAG,))
    refit_config = replace(c, weights=wts)
    if cv_plan is None:
        return fit(d, refit_config, method=method)
    return cross_validate(d, refit_config, cv_plan, spacing=spacing,
                          method=method).best_model


def aspcr_pipeline(d: Dataset, c: SpcrConfig, plan: FoldPlan,
                   spacing: str = "linear", method: str = "cov"):
    """Full CV pipeline used by the benchmark suite.

    Selects the pilot penalties by cross-validation, derives the weights from
    the pilot refit, then cross-validates the adaptive stage on the same fold
    plan. Returns (pilot_cv, adaptive_cv_or_None, final_model); adaptive_cv is
    None when the pilot was degenerate.
    """
    if c.weights is not None:
        raise ValueError("pilot configuration must not carry adaptive weights")
    pilot_cv = cross_validate(d, c, plan, spacing=spacing, method=method)
    pilot = pilot_cv.best_model
    wts = adaptive_weights(pilot)
    if np.all(np.isinf(wts)):
        flagged = replace(pilot, flags=pilot.flags + (DEGENERATE_FLAG,))
        return pilot_cv, None, flagged
    adaptive_cv = cross_validate(d, replace(c, weights=wts), plan,
                                 spacing=spacing, method=method)
    return pilot_cv, adaptive_cv, adaptive_cv.best_model
