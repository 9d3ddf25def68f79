"""Relay transmit-SNR search for the closed-form secrecy outage capacity."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .af import soc_af_closed
from .channel import SystemParams, db_to_linear
from .df import soc_df_closed
from .montecarlo import Strategy

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def soc_closed(strategy, params: SystemParams) -> float:
    return soc_af_closed(params) if Strategy.parse(strategy) is Strategy.AF else soc_df_closed(params)


def soc_at_snr_r(params: SystemParams, strategy, snr_r_db: float) -> float:
    return soc_closed(strategy, params.with_(p_r=db_to_linear(snr_r_db)))


def snr_grid(lo_db: float, hi_db: float, step_db: float) -> np.ndarray:
    if not step_db > 0:
        raise ValueError(f"step_db must be > 0, got {step_db!r}")
    if hi_db < lo_db:
        raise ValueError(f"empty grid: hi_db={hi_db!r} < lo_db={lo_db!r}")
    count = int(math.floor((hi_db - lo_db) / step_db + 1e-9)) + 1
    return lo_db + step_db * np.arange(count)


def sweep_snr_r(params: SystemParams, strategy, lo_db: float, hi_db: float, step_db: float):
    """[(snr_r_db, soc), ...] on a uniform grid, ascending in SNR."""
    return [(float(s), soc_at_snr_r(params, strategy, s)) for s in snr_grid(lo_db, hi_db, step_db)]


def golden_section_max(f, lo: float, hi: float, tol: float, max_iter: int = 200):
    """Maximize a unimodal ``f`` on [lo, hi]; returns (x, f(x)) with bracket width <= tol."""
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


@dataclass(frozen=True)
class OptimizeResult:
    snr_r_star_db: float
    soc_star: float
    profile: list = field(default_factory=list)


def optimize_snr_r(
    params: SystemParams, strategy, lo_db: float, hi_db: float, tol_db: float, coarse_step_db: float = 1.0
) -> OptimizeResult:
    """Coarse grid scan to bracket the best SNR_R, then golden-section refinement.

    The scan guards against a non-unimodal objective; the refined point is only
    accepted if it beats the best grid point, and boundary optima are allowed.
    """
    if not tol_db > 0:
        raise ValueError(f"tol_db must be > 0, got {tol_db!r}")
    profile = sweep_snr_r(params, strategy, lo_db, hi_db, coarse_step_db)
    values = [v for _, v in profile]
    i = int(np.argmax(values))
    best_x, best_v = profile[i]
    left = profile[max(i - 1, 0)][0]
    right = profile[i + 1][0] if i + 1 < len(profile) else min(hi_db, best_x + coarse_step_db)
    if right > left:
        x, v = golden_section_max(lambda s: soc_at_snr_r(params, strategy, s), left, right, tol_db)
        if v > best_v:
            best_x, best_v = x, v
    return OptimizeResult(snr_r_star_db=float(best_x), soc_star=float(best_v), profile=profile)
