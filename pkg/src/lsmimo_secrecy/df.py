"""Decode-and-forward relaying: MRC on the first hop, MRT on the second.

The end-to-end legitimate rate is the smaller hop capacity.  The eavesdropper
sees the relay's MRT beam, so its effective gain is |h_re^H u|^2 with
u = h_rd_hat / |h_rd_hat|, a unit-mean exponential variable.

Sign note: the eavesdropper tail is Pr(|h_re^H u|^2 > t) = exp(-t), so the
epsilon-outage rate is C_D - W log2(1 - p_r alpha_re ln eps).  The variant with
``+ ln eps`` (:func:`soc_df_plus_sign`) is kept only to show that it does not
calibrate; for eps < 1 its log argument is below 1 and often negative.
"""

from __future__ import annotations

import math

import numpy as np

from .af import TrialOutcome
from .channel import ChannelRealization, ProjectionStats, SystemParams, as_stats


def _snr_sr(stats: ProjectionStats, params: SystemParams):
    return params.p_s * params.alpha_sr * stats.sr2


def _snr_rd(stats: ProjectionStats, params: SystemParams):
    return params.p_r * params.alpha_rd * stats.rd_gain(params.rho) / stats.hat2


def _snr_e(stats: ProjectionStats, params: SystemParams):
    return params.p_r * params.alpha_re * stats.re_gain() / stats.hat2


def _cap(params: SystemParams, snr):
    return params.bandwidth_hz * np.log2(1.0 + snr)


def capacity_sr_df(real: ChannelRealization | ProjectionStats, params: SystemParams):
    stats = real if isinstance(real, ProjectionStats) else ProjectionStats.from_realization(real)
    return _cap(params, _snr_sr(stats, params))


def capacity_sr_df_hardened(params: SystemParams) -> float:
    return params.bandwidth_hz * math.log2(1.0 + params.p_s * params.alpha_sr * params.n_r)


def capacity_rd_df(real: ChannelRealization | ProjectionStats, params: SystemParams):
    return _cap(params, _snr_rd(as_stats(real), params))


def capacity_rd_df_hardened(params: SystemParams) -> float:
    return params.bandwidth_hz * math.log2(1.0 + params.p_r * params.alpha_rd * params.rho * params.n_r)


def capacity_d_df(real: ChannelRealization | ProjectionStats, params: SystemParams):
    """Per-realization end-to-end rate: min of the two hop capacities."""
    stats = as_stats(real)
    return _cap(params, np.minimum(_snr_sr(stats, params), _snr_rd(stats, params)))


def capacity_d_df_closed(params: SystemParams) -> float:
    n = params.n_r
    snr = min(params.p_s * params.alpha_sr * n, params.p_r * params.alpha_rd * params.rho * n)
    return params.bandwidth_hz * math.log2(1.0 + snr)


def capacity_e_df(real: ChannelRealization | ProjectionStats, params: SystemParams):
    return _cap(params, _snr_e(as_stats(real), params))


def outcomes_df(stats: ProjectionStats, params: SystemParams) -> TrialOutcome:
    stats.check_nonzero()
    gamma_d = np.minimum(_snr_sr(stats, params), _snr_rd(stats, params))
    return TrialOutcome.from_snrs(gamma_d, _snr_e(stats, params), params.bandwidth_hz)


def soc_df_closed(params: SystemParams) -> float:
    """Secrecy outage capacity of DF relaying (bit/s), clamped at zero."""
    eve = params.bandwidth_hz * math.log2(1.0 - params.p_r * params.alpha_re * math.log(params.epsilon))
    return max(0.0, capacity_d_df_closed(params) - eve)


def soc_df_plus_sign(params: SystemParams) -> float:
    """C_D - W log2(1 + p_r alpha_re ln eps), unclamped; NaN where the log is undefined."""
    arg = 1.0 + params.p_r * params.alpha_re * math.log(params.epsilon)
    if arg <= 0:
        return math.nan
    return capacity_d_df_closed(params) - params.bandwidth_hz * math.log2(arg)


def interception_prob_df_closed(params: SystemParams) -> float:
    eve_gain = params.p_r * params.alpha_re
    if eve_gain == 0:
        return 0.0
    n = params.n_r
    t = min(params.p_s * params.alpha_sr * n, params.p_r * params.alpha_rd * params.rho * n)
    return math.exp(-t / eve_gain)
