"""Hellinger distances between Gaussian experiments and their verification."""

from gaussmetrics.covariances import (
    DecayReport,
    eigenvalue_l2_norm,
    eigenvalues,
    regression_covariances,
    regression_decay,
    white_noise_bound,
)
from gaussmetrics.hellinger import (
    HellingerBound,
    hellinger_bound,
    hellinger_exact,
    hellinger_squared,
)
from gaussmetrics.laws import GaussianLaw, product_law
from gaussmetrics.verification import (
    counterexample_report,
    hellinger_suite,
    regression_bound_report,
    white_noise_report,
)

__all__ = [
    "DecayReport",
    "GaussianLaw",
    "HellingerBound",
    "counterexample_report",
    "eigenvalue_l2_norm",
    "eigenvalues",
    "hellinger_bound",
    "hellinger_exact",
    "hellinger_squared",
    "hellinger_suite",
    "product_law",
    "regression_bound_report",
    "regression_covariances",
    "regression_decay",
    "white_noise_bound",
    "white_noise_report",
]
