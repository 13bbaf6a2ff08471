"""Sparse principal component regression with adaptive loadings.

A one-stage estimator that couples the regression loss with the PCA
reconstruction loss under elastic-net style penalties, solved by blockwise
coordinate descent, plus the cross-validation machinery, a classical PCR
baseline, and a seeded Monte Carlo benchmark suite.
"""

__version__ = "0.1.0"

from .adaptive import adaptive_weights, aspcr_pipeline, fit_aspcr
from .baselines import PcaDecomposition, PcrModel, pca, pcr_fit, pcr_select_components
from .data import (CsvFormatError, CvResult, Dataset, EvalMetrics, SpcrConfig,
                   SpcrModel, center, composite_coefficients, load_csv)
from .selection import FoldPlan, cross_validate, lambda_grid, make_folds
from .simbench import (BenchReport, SimCase, case_spec, evaluate_mse, make_case,
                       run_benchmark, support_metrics)
from .solver import (NonFiniteError, SolverState, fit, initial_parameters,
                     objective, soft_threshold, update_a, update_beta,
                     update_gamma, update_gamma0)

__all__ = [
    "BenchReport", "CsvFormatError", "CvResult", "Dataset", "EvalMetrics",
    "FoldPlan", "NonFiniteError", "PcaDecomposition", "PcrModel", "SimCase",
    "SolverState", "SpcrConfig", "SpcrModel", "adaptive_weights",
    "aspcr_pipeline", "case_spec", "center", "composite_coefficients",
    "cross_validate", "evaluate_mse", "fit", "fit_aspcr", "initial_parameters",
    "lambda_grid", "load_csv", "make_case", "make_folds", "objective", "pca",
    "pcr_fit", "pcr_select_components", "run_benchmark", "soft_threshold",
    "support_metrics", "update_a", "update_beta", "update_gamma",
    "update_gamma0",
]
