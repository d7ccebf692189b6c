"""Spot and integrated volatility estimators with local-likelihood weights."""

from estimators.config import BiasCorrection, EstimatorConfig, SpotKernel, WeightMode
from estimators.iv import (
    asymptotic_sd,
    default_cutoff,
    estimate_from_observations,
    estimate_iv,
    estimate_iv_mle,
    finite_sample_sd,
    spot_pre_estimate,
    weights_for,
)
from estimators.mle import MleResult, mle_refine
from estimators.schemas import IvEstimate, SpotEstimate
from estimators.spot import (
    block_responses,
    floor_spot,
    local_linear_smooth,
    neighbour_responses,
    spot_block_estimate,
    spot_box,
    spot_local_linear,
)
from estimators.weights import compute_weights, frequency_offsets, oracle_spot

__all__ = [
    "BiasCorrection",
    "EstimatorConfig",
    "IvEstimate",
    "MleResult",
    "SpotEstimate",
    "SpotKernel",
    "WeightMode",
    "asymptotic_sd",
    "block_responses",
    "compute_weights",
    "default_cutoff",
    "estimate_from_observations",
    "estimate_iv",
    "estimate_iv_mle",
    "finite_sample_sd",
    "floor_spot",
    "frequency_offsets",
    "local_linear_smooth",
    "mle_refine",
    "neighbour_responses",
    "oracle_spot",
    "spot_block_estimate",
    "spot_box",
    "spot_local_linear",
    "spot_pre_estimate",
    "weights_for",
]
