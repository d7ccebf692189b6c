"""Fisher information, the series identity and efficiency calculators."""

from fisher.efficiency import (
    SingleFrequencyOptimum,
    efficiency_table,
    global_tuning_ratio,
    grid_argmax_single_freq,
    optimal_information,
    power_variation_variance,
    single_freq_information,
    single_freq_optimum,
)
from fisher.information import (
    FisherReport,
    SeriesIdentity,
    fisher_closed,
    fisher_partial,
    fisher_report,
    fisher_tail_bound,
    identity_rhs,
    series_identity,
)

__all__ = [
    "FisherReport",
    "SeriesIdentity",
    "SingleFrequencyOptimum",
    "efficiency_table",
    "fisher_closed",
    "fisher_partial",
    "fisher_report",
    "fisher_tail_bound",
    "global_tuning_ratio",
    "grid_argmax_single_freq",
    "identity_rhs",
    "optimal_information",
    "power_variation_variance",
    "series_identity",
    "single_freq_information",
    "single_freq_optimum",
]
