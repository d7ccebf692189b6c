"""Deterministic parallel Monte Carlo harness."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Union

import numpy as np

from estimators.iv import asymptotic_sd, estimate_from_observations
from mc.config import McConfig
from mc.seeding import substream_seed
from mc.summary import McReport, summarize
from model.curves import sigma_moment
from model.simulation import simulate_observations
from storage.csv_store import write_json, write_replicates

logger = logging.getLogger(__name__)


def run_replicate(config: McConfig, rep: int) -> float:
    """
    Simulate and estimate one replicate on its own seed substream.

    Args:
        config: Study configuration
        rep: Replicate index

    Returns:
        The integrated volatility estimate
    """
    curve = config.parsed_curve
    seed = substream_seed(config.base_seed, rep)
    obs = simulate_observations(curve, config.n, config.delta, seed)
    return estimate_from_observations(obs, config.estimator_config(), curve).iv_hat


def run_mc(config: McConfig, threads: Optional[int] = None) -> McReport:
    """
    Run every replicate and summarize the estimates.

    Replicates are gathered into index-ordered slots, so the report is identical for any
    thread count.

    Args:
        config: Study configuration
        threads: Worker count, overriding the configuration hint

    Returns:
        McReport with the per-replicate estimates attached
    """
    workers = threads or config.threads
    curve = config.parsed_curve
    truth = sigma_moment(curve, 2)
    reference_sd = asymptotic_sd(curve, config.delta, config.n)
    logger.info(
        "Starting %d replicates (n=%d, blocks=%d, J=%d, weights=%s) on %d thread(s)",
        config.reps,
        config.n,
        config.blocks,
        config.J,
        config.weight_mode,
        workers,
    )

    started = time.perf_counter()
    estimates = np.empty(config.reps)
    if workers == 1:
        for rep in range(config.reps):
            estimates[rep] = run_replicate(config, rep)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = pool.map(lambda rep: run_replicate(config, rep), range(config.reps))
            for rep, value in enumerate(results):
                estimates[rep] = value
    wall_time = time.perf_counter() - started
    logger.info("Finished %d replicates in %.2fs", config.reps, wall_time)

    return summarize(
        estimates,
        true_value=truth,
        asymptotic_sd=reference_sd if reference_sd > 0.0 else None,
        config=config.to_dict(),
        wall_time=wall_time,
    )


def write_report(
    report: McReport, path: Union[str, Path], include_wall_time: bool = False
) -> None:
    """Write the report JSON."""
    write_json(report.to_dict(include_wall_time=include_wall_time), path)


def write_report_replicates(report: McReport, path: Union[str, Path]) -> None:
    """Write the per-replicate estimates as ``rep,iv_hat``."""
    write_replicates(report.estimates, path)
