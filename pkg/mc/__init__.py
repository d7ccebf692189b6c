"""Reproducible Monte Carlo studies of the integrated volatility estimator."""

from mc.config import DEFAULT_REPS, McConfig, load_mc_config
from mc.harness import run_mc, run_replicate, write_report, write_report_replicates
from mc.seeding import splitmix64, substream_seed
from mc.summary import McReport, summarize

__all__ = [
    "DEFAULT_REPS",
    "McConfig",
    "McReport",
    "load_mc_config",
    "run_mc",
    "run_replicate",
    "splitmix64",
    "substream_seed",
    "summarize",
    "write_report",
    "write_report_replicates",
]
