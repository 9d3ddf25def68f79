"""Amplify-and-forward relaying with MRC reception and MRT forwarding.

The relay processing matrix is the rank-one product

    F = (h_rd_hat / |h_rd_hat|) * (c |h_sr|^2 + 1)^(-1/2) * (h_sr^H / |h_sr|),

so every SNR reduces to two norms and two inner products; ``F`` itself is only
built by :func:`gamma_d_af_signal_chain`, which exists as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, ProjectionStats, SystemParams, as_stats, true_csi


@dataclass(frozen=True)
class AfConstants:
    a: float
    b: float
    c: float
    d: float
    e: float


def af_constants(params: SystemParams) -> AfConstants:
    b = params.p_r * params.alpha_rd
    c = params.p_s * params.alpha_sr
    e = params.p_r * params.alpha_re
    return AfConstants(a=b * c, b=b, c=c, d=c * e, e=e)


@dataclass(frozen=True, eq=False)
class TrialOutcome:
    """Per-trial SNRs (linear) and capacities (bit/s).

    Fields are scalars for one trial or equal-length arrays for many;
    ``secrecy_rate`` is ``c_d - c_e`` before any clamping.
    """

    gamma_d: np.ndarray
    gamma_e: np.ndarray
    c_d: np.ndarray
    c_e: np.ndarray
    secrecy_rate: np.ndarray

    @classmethod
    def from_snrs(cls, gamma_d, gamma_e, bandwidth_hz: float) -> "TrialOutcome":
        c_d = bandwidth_hz * np.log2(1.0 + gamma_d)
        c_e = bandwidth_hz * np.log2(1.0 + gamma_e)
        return cls(gamma_d=gamma_d, gamma_e=gamma_e, c_d=c_d, c_e=c_e, secrecy_rate=c_d - c_e)

    def __len__(self):
        return np.size(self.c_d)

    def __getitem__(self, i) -> "TrialOutcome":
        return TrialOutcome(
            *(np.asarray(getattr(self, f))[i] for f in ("gamma_d", "gamma_e", "c_d", "c_e", "secrecy_rate"))
        )


def _mrt_snr(num_coef, den_coef, gain, stats, c):
    # num * gain * |h_sr|^2 / (den * gain + |h_hat|^2 (c |h_sr|^2 + 1))
    return num_coef * gain * stats.sr2 / (den_coef * gain + stats.hat2 * (c * stats.sr2 + 1.0))


def gamma_d_af(real: ChannelRealization | ProjectionStats, params: SystemParams):
    """Destination SNR for one realization (or a batch stacked on axis 0)."""
    k = af_constants(params)
    stats = as_stats(real)
    return _mrt_snr(k.a, k.b, stats.rd_gain(params.rho), stats, k.c)


def gamma_e_af(real: ChannelRealization | ProjectionStats, params: SystemParams):
    """Eavesdropper SNR; the relay forwards along h_rd_hat, blind to h_re."""
    k = af_constants(params)
    stats = as_stats(real)
    return _mrt_snr(k.d, k.e, stats.re_gain(), stats, k.c)


def relay_matrix_af(real: ChannelRealization, params: SystemParams) -> np.ndarray:
    """Explicit n_r x n_r processing matrix. O(n_r^2); for checks only."""
    h_sr, h_hat = real.h_sr, real.h_rd_hat
    c = params.p_s * params.alpha_sr
    n_sr = np.linalg.norm(h_sr)
    scale = 1.0 / (np.linalg.norm(h_hat) * math.sqrt(c * n_sr**2 + 1.0) * n_sr)
    return scale * np.outer(h_hat, np.conj(h_sr))


def relay_forward_af(real: ChannelRealization, params: SystemParams, s: complex, noise) -> np.ndarray:
    """Forwarded vector r = F y_R for a given source symbol and relay noise vector."""
    y_r = math.sqrt(params.p_s * params.alpha_sr) * real.h_sr * s + np.asarray(noise)
    return relay_matrix_af(real, params) @ y_r


def gamma_d_af_signal_chain(real: ChannelRealization, params: SystemParams) -> float:
    """Destination SNR from the received-signal decomposition, building F explicitly.

    Splits y_D into the desired-symbol coefficient and the coefficient vector
    applied to the relay noise, then takes signal power over (forwarded noise
    power + unit destination noise).  Single realization only.
    """
    if real.h_sr.ndim != 1:
        raise ValueError("signal-chain oracle takes one realization")
    if not np.any(real.h_rd_hat):
        raise ValueError("estimated relay-destination channel has zero norm")
    h_rd = true_csi(real.h_rd_hat, real.err, params.rho)
    f = relay_matrix_af(real, params)
    row = math.sqrt(params.p_r * params.alpha_rd) * (np.conj(h_rd) @ f)
    signal = row @ real.h_sr * math.sqrt(params.p_s * params.alpha_sr)
    noise_power = np.sum(np.abs(row) ** 2)
    return float(abs(signal) ** 2 / (noise_power + 1.0))


def outcomes_af(stats: ProjectionStats, params: SystemParams) -> TrialOutcome:
    return TrialOutcome.from_snrs(gamma_d_af(stats, params), gamma_e_af(stats, params), params.bandwidth_hz)


def _hardened_snr_d(params: SystemParams) -> float:
    k = af_constants(params)
    n, rho = params.n_r, params.rho
    return k.a * rho * n * n / (k.b * rho * n + k.c * n + 1.0)


def capacity_d_af_closed(params: SystemParams) -> float:
    """Legitimate AF capacity after channel hardening (bit/s)."""
    return params.bandwidth_hz * math.log2(1.0 + _hardened_snr_d(params))


def eavesdropper_threshold_af(params: SystemParams, epsilon: float | None = None) -> float:
    """The (1 - epsilon)-quantile of the hardened eavesdropper SNR.

    Solves epsilon = exp(-(cN+1) x / (dN - e x)) for x; always in [0, dN/e).
    """
    eps = params.epsilon if epsilon is None else epsilon
    k = af_constants(params)
    n = params.n_r
    log_eps = math.log(eps)
    return k.d * n * log_eps / (k.e * log_eps - k.c * n - 1.0)


def gamma_e_af_cdf(x, params: SystemParams):
    """CDF of the hardened eavesdropper SNR d N y / (e y + c N + 1), y ~ Exp(1).

    The variable is bounded above by dN/e, where the CDF reaches 1.  With no
    eavesdropper link (d = 0) it is a point mass at 0.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0) or np.any(np.isnan(x_arr)):
        raise ValueError("CDF argument must be nonnegative")
    k = af_constants(params)
    n = params.n_r
    if k.d == 0:
        out = np.ones_like(x_arr)
    else:
        room = k.d * n - k.e * x_arr
        inside = room > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(inside, -np.expm1(-(k.c * n + 1.0) * x_arr / np.where(inside, room, 1.0)), 1.0)
    return float(out) if out.ndim == 0 else out


def soc_af_closed(params: SystemParams) -> float:
    """Secrecy outage capacity of AF relaying (bit/s), clamped at zero."""
    x = eavesdropper_threshold_af(params)
    return max(0.0, capacity_d_af_closed(params) - params.bandwidth_hz * math.log2(1.0 + x))


def interception_prob_af_closed(params: SystemParams) -> float:
    """Probability that the hardened eavesdropper SNR exceeds the legitimate one."""
    k = af_constants(params)
    n = params.n_r
    t = _hardened_snr_d(params)
    if k.d == 0:
        return 0.0
    room = k.d * n - k.e * t
    if room <= 0:
        return 0.0
    return math.exp(-(k.c * n + 1.0) * t / room)
