import math

import numpy as np
import pytest

from lsmimo_secrecy.af import soc_af_closed
from lsmimo_secrecy.channel import ProjectionStats, RngStream, SystemParams, sample_block, sample_realization
from lsmimo_secrecy.df import (
    capacity_d_df,
    capacity_d_df_closed,
    capacity_e_df,
    capacity_rd_df,
    capacity_rd_df_hardened,
    capacity_sr_df,
    capacity_sr_df_hardened,
    interception_prob_df_closed,
    soc_df_closed,
    soc_df_plus_sign,
)

# Frozen from a 30-digit mpmath evaluation.
C_SR_HARDENED = 132878.56641840544
C_D_DF_DEFAULT = 131358.6957664852
SOC_DF_DEFAULT_EPS01 = 42856.29538145964


def test_hop_capacity_examples(defaults, stats_1e4):
    real = sample_realization(defaults, RngStream(1))
    # p_s has to stay positive; a vanishing source power sends the hop rate to 0
    assert capacity_sr_df(real, defaults.with_(p_s=1e-300)) == pytest.approx(0.0, abs=1e-200)
    assert capacity_sr_df_hardened(defaults) == pytest.approx(C_SR_HARDENED, abs=1e-6)
    assert abs(capacity_sr_df_hardened(defaults) - 132_880) < 5
    assert capacity_rd_df_hardened(defaults.with_(rho=1.0)) == pytest.approx(1e4 * math.log2(1 + 100 * 100))
    assert capacity_rd_df_hardened(defaults) == pytest.approx(C_D_DF_DEFAULT, abs=1e-6)
    assert abs(capacity_rd_df_hardened(defaults) - 131_360) < 5
    assert abs(np.mean(capacity_sr_df(stats_1e4, defaults)) / capacity_sr_df_hardened(defaults) - 1) < 0.01
    assert abs(np.mean(capacity_rd_df(stats_1e4, defaults)) / capacity_rd_df_hardened(defaults) - 1) < 0.02


def test_end_to_end_closed(defaults):
    assert capacity_d_df_closed(defaults) == pytest.approx(C_D_DF_DEFAULT, abs=1e-6)
    tie = defaults.with_(rho=1.0)
    assert capacity_d_df_closed(tie) == capacity_sr_df_hardened(tie) == capacity_rd_df_hardened(tie)
    for p_r in (10.0, 50.0, 100.0):
        q = defaults.with_(p_r=p_r, rho=0.5)
        assert p_r <= q.p_s * q.alpha_sr / (q.alpha_rd * q.rho)
        assert capacity_d_df_closed(q) == capacity_rd_df_hardened(q)


def test_min_hop_dominance(defaults):
    block = sample_block(100, 4, 0, 2_000)
    c_d = capacity_d_df(block, defaults)
    assert np.all(c_d <= capacity_sr_df(block, defaults))
    assert np.all(c_d <= capacity_rd_df(block, defaults))


def test_eavesdropper_capacity():
    stats = ProjectionStats.from_realization(sample_block(100, 6, 0, 100_000))
    p = SystemParams()
    assert np.all(capacity_e_df(stats, p.with_(alpha_re=0)) == 0)
    proj = np.abs(stats.hat_re) ** 2 / stats.hat2
    assert abs(proj.mean() - 1) < 0.02
    c_e = capacity_e_df(stats, p)
    w, g = p.bandwidth_hz, p.p_r * p.alpha_re
    grid = np.linspace(0, np.quantile(c_e, 0.999), 20)
    oracle = np.exp(-(2 ** (grid / w) - 1) / g)
    empirical = np.array([np.mean(c_e > t) for t in grid])
    assert np.max(np.abs(empirical - oracle)) < 0.01


def test_soc_examples(defaults):
    assert soc_df_closed(defaults) == pytest.approx(SOC_DF_DEFAULT_EPS01, abs=1e-6)
    assert abs(soc_df_closed(defaults) - 42_860) < 10
    assert soc_df_closed(defaults.with_(epsilon=1 - 1e-15)) == pytest.approx(C_D_DF_DEFAULT, rel=1e-9)
    assert soc_df_closed(defaults) > soc_af_closed(defaults)


def test_plus_sign_variant_undefined_at_operating_point(defaults):
    # 1 + 100 * ln(0.01) < 0
    assert math.isnan(soc_df_plus_sign(defaults))
    weak = defaults.with_(alpha_re=0.002, epsilon=0.05)
    assert soc_df_plus_sign(weak) > capacity_d_df_closed(weak) > soc_df_closed(weak)


def test_interception_examples(defaults):
    assert interception_prob_df_closed(defaults.with_(rho=0.0)) == 1.0
    assert interception_prob_df_closed(defaults.with_(alpha_re=0)) == 0.0
    assert interception_prob_df_closed(defaults) == pytest.approx(math.exp(-90), rel=1e-12)
    vals = [interception_prob_df_closed(defaults.with_(alpha_re=a)) for a in np.geomspace(0.5, 500, 30)]
    assert np.all(np.diff(vals) > 0)


def test_df_dominates_af_on_symmetric_grid(defaults):
    for eps in (1e-4, 1e-2, 0.05):
        for a in np.linspace(0.1, 2.0, 20):
            q = defaults.with_(alpha_re=a, epsilon=eps)
            assert soc_df_closed(q) >= soc_af_closed(q)


def test_rho_insensitivity_of_interception(defaults):
    gap = abs(
        interception_prob_df_closed(defaults.with_(rho=0.8)) - interception_prob_df_closed(defaults.with_(rho=1.0))
    )
    assert gap < 1e-30
