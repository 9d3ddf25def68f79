"""Secrecy outage capacity of large-scale MIMO AF/DF relaying with imperfect CSI."""

from .af import (
    AfConstants,
    TrialOutcome,
    af_constants,
    capacity_d_af_closed,
    gamma_d_af,
    gamma_d_af_signal_chain,
    gamma_e_af,
    gamma_e_af_cdf,
    interception_prob_af_closed,
    soc_af_closed,
)
from .channel import (
    ChannelRealization,
    RngStream,
    SystemParams,
    db_to_linear,
    hardening_gap,
    sample_complex_gaussian,
    sample_realization,
    true_csi,
)
from .df import (
    capacity_d_df,
    capacity_d_df_closed,
    capacity_e_df,
    capacity_rd_df,
    capacity_sr_df,
    interception_prob_df_closed,
    soc_df_closed,
)
from .montecarlo import EmpiricalSummary, Strategy, TrialSet, empirical_quantile, empirical_soc, run_trials
from .optimize import OptimizeResult, optimize_snr_r, sweep_snr_r

__version__ = "0.1.0"
