"""Scenario parameters, Rayleigh channel sampling with imperfect CSI, hardening diagnostics.

Every complex entry is CN(0, 1): real and imaginary parts are independent
N(0, 1/2), so E|x|^2 = 1.  Noise is unit variance everywhere and is never
sampled, because all capacities depend on the channels only through SNRs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

MASK64 = (1 << 64) - 1


def db_to_linear(snr_db):
    out = 10.0 ** (np.asarray(snr_db, dtype=float) / 10.0)
    return float(out) if out.ndim == 0 else out


def linear_to_db(p):
    out = 10.0 * np.log10(np.asarray(p, dtype=float))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SystemParams:
    """All scalars of one relaying scenario.

    Powers are linear and relative to the unit noise variance; path losses are
    dimensionless.  Defaults are the symmetric operating point used for the
    reproduced figures (100 antennas, 10 kHz, rho=0.9, 20 dB at both nodes).
    """

    n_r: int = 100
    bandwidth_hz: float = 1e4
    rho: float = 0.9
    p_s: float = 100.0
    p_r: float = 100.0
    alpha_sr: float = 1.0
    alpha_rd: float = 1.0
    alpha_re: float = 1.0
    epsilon: float = 0.01

    def __post_init__(self):
        if isinstance(self.n_r, bool) or int(self.n_r) != self.n_r or self.n_r < 1:
            raise ValueError(f"n_r must be a positive integer, got {self.n_r!r}")
        object.__setattr__(self, "n_r", int(self.n_r))
        if not self.bandwidth_hz > 0:
            raise ValueError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz!r}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho!r}")
        for name in ("p_s", "p_r"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")
        for name in ("alpha_sr", "alpha_rd", "alpha_re"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)!r}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")

    @classmethod
    def from_db(cls, snr_s_db: float = 20.0, snr_r_db: float = 20.0, **kwargs) -> "SystemParams":
        return cls(p_s=db_to_linear(snr_s_db), p_r=db_to_linear(snr_r_db), **kwargs)

    @property
    def snr_s_db(self) -> float:
        return float(linear_to_db(self.p_s))

    @property
    def snr_r_db(self) -> float:
        return float(linear_to_db(self.p_r))

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class RngStream:
    """Counter-style substream: (seed, stream_id) fully determines the draws."""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if int(v) != v or not 0 <= v <= MASK64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id),))
        return np.random.Generator(np.random.PCG64(ss))


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def sample_complex_gaussian(n: int, rng) -> np.ndarray:
    """Draw ``n`` i.i.d. CN(0, 1) entries: ``n`` real parts, then ``n`` imaginary parts."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    z = _as_generator(rng).standard_normal((2, int(n)))
    return (z[0] + 1j * z[1]) * np.sqrt(0.5)


def true_csi(h_rd_hat, err, rho: float) -> np.ndarray:
    """Gauss-Markov mismatch model: h_rd = sqrt(rho) * h_rd_hat + sqrt(1 - rho) * err."""
    h_rd_hat = np.asarray(h_rd_hat)
    err = np.asarray(err)
    if h_rd_hat.shape != err.shape:
        raise ValueError(f"shape mismatch: h_rd_hat {h_rd_hat.shape} vs err {err.shape}")
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho!r}")
    return np.sqrt(rho) * h_rd_hat + np.sqrt(1.0 - rho) * err


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One draw of the four fading vectors.

    Arrays may carry leading batch axes; the antenna axis is always last.  The
    true relay-destination channel is not stored, see :meth:`h_rd`.
    """

    h_sr: np.ndarray
    h_rd_hat: np.ndarray
    err: np.ndarray
    h_re: np.ndarray

    def __post_init__(self):
        shapes = {v.shape for v in (self.h_sr, self.h_rd_hat, self.err, self.h_re)}
        if len(shapes) != 1:
            raise ValueError(f"all channel vectors must share one shape, got {sorted(shapes)}")

    @property
    def n_r(self) -> int:
        return self.h_sr.shape[-1]

    def h_rd(self, rho: float) -> np.ndarray:
        return true_csi(self.h_rd_hat, self.err, rho)

    def stats(self) -> "ProjectionStats":
        return ProjectionStats.from_realization(self)

    def __eq__(self, other):
        if not isinstance(other, ChannelRealization):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, f), getattr(other, f)) for f in ("h_sr", "h_rd_hat", "err", "h_re")
        )


def sample_realization(params: SystemParams, rng) -> ChannelRealization:
    # Field order h_sr, h_rd_hat, err, h_re is part of the reproducibility contract.
    g = _as_generator(rng)
    n = params.n_r
    h_sr, h_rd_hat, err, h_re = (sample_complex_gaussian(n, g) for _ in range(4))
    return ChannelRealization(h_sr=h_sr, h_rd_hat=h_rd_hat, err=err, h_re=h_re)


def sample_block(n_r: int, seed: int, start: int, stop: int) -> ChannelRealization:
    """Realizations for stream ids ``start..stop-1``, stacked along axis 0.

    Row ``k`` is bit-identical to ``sample_realization`` with stream id ``start + k``.
    """
    buf = np.empty((stop - start, 4, 2, n_r))
    for k, sid in enumerate(range(start, stop)):
        RngStream(seed, sid).generator().standard_normal(out=buf[k])
    z = (buf[:, :, 0, :] + 1j * buf[:, :, 1, :]) * np.sqrt(0.5)
    return ChannelRealization(h_sr=z[:, 0], h_rd_hat=z[:, 1], err=z[:, 2], h_re=z[:, 3])


@dataclass(frozen=True, eq=False)
class ProjectionStats:
    """The scalars every SNR in the system depends on.

    ``sr2 = |h_sr|^2``, ``hat2 = |h_rd_hat|^2``, ``hat_err = h_rd_hat^H err``,
    ``hat_re = h_rd_hat^H h_re``.  With these, ``h_rd_hat^H h_rd`` for any rho is
    ``sqrt(rho) * hat2 + sqrt(1 - rho) * hat_err``, so one set of draws serves
    every point of a parameter sweep.
    """

    sr2: np.ndarray
    hat2: np.ndarray
    hat_err: np.ndarray
    hat_re: np.ndarray

    @classmethod
    def from_realization(cls, real: ChannelRealization) -> "ProjectionStats":
        h = real.h_rd_hat
        return cls(
            sr2=_sqnorm(real.h_sr),
            hat2=_sqnorm(h),
            hat_err=np.sum(np.conj(h) * real.err, axis=-1),
            hat_re=np.sum(np.conj(h) * real.h_re, axis=-1),
        )

    @classmethod
    def concat(cls, parts) -> "ProjectionStats":
        parts = list(parts)
        return cls(*(np.concatenate([np.atleast_1d(getattr(p, f)) for p in parts]) for f in _STAT_FIELDS))

    def __len__(self):
        return np.size(self.sr2)

    def rd_gain(self, rho: float):
        """|h_rd^H h_rd_hat|^2 for the true channel at correlation ``rho``."""
        return np.abs(np.sqrt(rho) * self.hat2 + np.sqrt(1.0 - rho) * self.hat_err) ** 2

    def re_gain(self):
        """|h_re^H h_rd_hat|^2."""
        return np.abs(self.hat_re) ** 2

    def check_nonzero(self):
        if np.any(self.hat2 <= 0):
            raise ValueError("estimated relay-destination channel has zero norm")


_STAT_FIELDS = ("sr2", "hat2", "hat_err", "hat_re")


def as_stats(real) -> ProjectionStats:
    """Reduce a realization (or pass through stats) and reject a zero-norm CSI estimate."""
    stats = real if isinstance(real, ProjectionStats) else ProjectionStats.from_realization(real)
    stats.check_nonzero()
    return stats


def _sqnorm(v):
    return np.sum(v.real**2 + v.imag**2, axis=-1)


def hardening_gap(v) -> float:
    """|‖v‖²/n − 1|: distance of the per-antenna channel energy from its mean."""
    v = np.asarray(v)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("hardening_gap needs a nonempty 1-D vector")
    return float(abs(_sqnorm(v) / v.size - 1.0))
