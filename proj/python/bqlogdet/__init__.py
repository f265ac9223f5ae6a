"""Log-determinant estimation with calibrated uncertainty."""

from ._core import (
    InputError,
    LinearOperator,
    NumericalError,
    bounds,
    exact_logdet,
    hist_k_obs_obs,
    hist_k_pred_obs,
    hist_k_pred_pred,
    logdet,
    poly_k_obs_obs,
    poly_k_pred_obs,
    poly_k_pred_pred,
    probabilistic_logdet,
    run_cli,
    truncate,
)

__all__ = [
    "InputError",
    "LinearOperator",
    "NumericalError",
    "bounds",
    "exact_logdet",
    "hist_k_obs_obs",
    "hist_k_pred_obs",
    "hist_k_pred_pred",
    "logdet",
    "poly_k_obs_obs",
    "poly_k_pred_obs",
    "poly_k_pred_pred",
    "probabilistic_logdet",
    "run_cli",
    "truncate",
]
