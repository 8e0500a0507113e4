"""Asymptotic recovery prediction and Monte Carlo simulation for PCA under heteroscedastic noise."""

from ._core import (
    HetpcaError,
    ModelParams,
    NoiseMixture,
    PredictionResult,
    __version__,
    all_real_roots_B,
    average_variance,
    critical_sample_ratio,
    homoscedastic_closed_form,
    lambda_split,
    largest_root_A,
    largest_root_B,
    predict,
    run_monte_carlo,
    top_left_singular_vector,
)

__all__ = [
    "HetpcaError",
    "ModelParams",
    "NoiseMixture",
    "PredictionResult",
    "__version__",
    "all_real_roots_B",
    "average_variance",
    "critical_sample_ratio",
    "homoscedastic_closed_form",
    "lambda_split",
    "largest_root_A",
    "largest_root_B",
    "predict",
    "run_monte_carlo",
    "top_left_singular_vector",
]
