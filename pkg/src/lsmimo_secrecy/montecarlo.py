"""Seeded Monte Carlo trials and empirical secrecy-outage statistics.

Trial ``k`` draws its channels from the substream ``(seed, k)``, so results do
not depend on how trials are split into blocks or spread over workers.  Each
trial is reduced to :class:`ProjectionStats` once; outcomes for any power,
path-loss, rho or epsilon setting are then evaluated on those same draws.
"""

from __future__ import annotations

import enum
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy import stats as sps

from .af import TrialOutcome, outcomes_af
from .channel import ProjectionStats, SystemParams, sample_block
from .df import outcomes_df

BLOCK = 4096
MIN_TAIL_EVENTS = 10


class Strategy(str, enum.Enum):
    AF = "AF"
    DF = "DF"

    @classmethod
    def parse(cls, value) -> "Strategy":
        return value if isinstance(value, cls) else cls(str(value).upper())


class TailResolutionWarning(RuntimeWarning):
    """epsilon * M is too small for the outage quantile to be resolved."""


def _block_stats(n_r: int, seed: int, bounds) -> ProjectionStats:
    start, stop = bounds
    return ProjectionStats.from_realization(sample_block(n_r, seed, start, stop))


def draw_stats(n_r: int, m: int, seed: int, workers: int = 1, block: int = BLOCK) -> ProjectionStats:
    """Sufficient statistics for trials ``0..m-1`` in trial-index order."""
    if int(m) != m or m < 1:
        raise ValueError(f"number of trials must be a positive integer, got {m!r}")
    bounds = [(s, min(s + block, m)) for s in range(0, m, block)]
    fn = partial(_block_stats, n_r, seed)
    if workers <= 1 or len(bounds) == 1:
        return ProjectionStats.concat(map(fn, bounds))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return ProjectionStats.concat(pool.map(fn, bounds))


def evaluate(strategy, stats: ProjectionStats, params: SystemParams) -> TrialOutcome:
    strategy = Strategy.parse(strategy)
    return outcomes_af(stats, params) if strategy is Strategy.AF else outcomes_df(stats, params)


@dataclass(frozen=True, eq=False)
class TrialSet:
    strategy: Strategy
    params: SystemParams
    seed: int
    outcomes: TrialOutcome

    def __len__(self):
        return len(self.outcomes)


def run_trials(
    strategy, params: SystemParams, m: int, seed: int, workers: int = 1, stats: ProjectionStats | None = None
) -> TrialSet:
    """Run ``m`` trials.  Pass ``stats`` from :func:`draw_stats` to reuse draws across a sweep."""
    if stats is None:
        stats = draw_stats(params.n_r, m, seed, workers=workers)
    elif len(stats) != m:
        raise ValueError(f"stats hold {len(stats)} trials, expected {m}")
    strategy = Strategy.parse(strategy)
    return TrialSet(strategy=strategy, params=params, seed=seed, outcomes=evaluate(strategy, stats, params))


def empirical_quantile(samples, q: float) -> float:
    """Interpolated order statistic at position q * (M - 1)."""
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("empirical_quantile needs at least one sample")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q!r}")
    return float(np.quantile(x, q, method="linear"))


def quantile_ci_halfwidth(samples, q: float, level: float = 0.95) -> float:
    """Half-width of the distribution-free order-statistic interval for the q-quantile."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    m = x.size
    tail = (1.0 - level) / 2.0
    # 1-based ranks: Pr(X_(lo) <= xi_q <= X_(hi)) >= level
    lo = int(sps.binom.ppf(tail, m, q))
    hi = int(sps.binom.ppf(1.0 - tail, m, q)) + 1
    lo, hi = min(max(lo, 1), m), min(max(hi, 1), m)
    return float(x[hi - 1] - x[lo - 1]) / 2.0


def binomial_se(p: float, m: int) -> float:
    return math.sqrt(p * (1.0 - p) / m)


@dataclass(frozen=True)
class EmpiricalSummary:
    soc_empirical: float
    interception_prob_empirical: float
    mean_c_d: float
    quantile_ci_halfwidth: float
    under_resolved: bool = False


def empirical_soc(trials: TrialSet, epsilon: float | None = None) -> EmpiricalSummary:
    eps = trials.params.epsilon if epsilon is None else epsilon
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"epsilon must lie in (0, 1], got {eps!r}")
    rate = np.asarray(trials.outcomes.secrecy_rate, dtype=float).ravel()
    if rate.size == 0:
        raise ValueError("empty trial set")
    under = eps * rate.size < MIN_TAIL_EVENTS
    if under:
        warnings.warn(
            f"epsilon*M = {eps * rate.size:g} < {MIN_TAIL_EVENTS}: outage quantile is under-resolved",
            TailResolutionWarning,
            stacklevel=2,
        )
    return EmpiricalSummary(
        soc_empirical=max(0.0, empirical_quantile(rate, eps)),
        interception_prob_empirical=float(np.mean(rate <= 0.0)),
        mean_c_d=float(np.mean(trials.outcomes.c_d)),
        quantile_ci_halfwidth=quantile_ci_halfwidth(rate, eps),
        under_resolved=under,
    )


def exceedance_probability(trials: TrialSet, rate: float) -> float:
    """Fraction of trials whose instantaneous secrecy rate falls below ``rate``."""
    return float(np.mean(rate > np.asarray(trials.outcomes.secrecy_rate)))
