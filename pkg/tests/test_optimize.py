import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lsmimo_secrecy.channel import SystemParams
from lsmimo_secrecy.optimize import golden_section_max, optimize_snr_r, snr_grid, soc_at_snr_r, sweep_snr_r

BASE = SystemParams(epsilon=0.01)


def test_grid_and_errors():
    assert np.allclose(snr_grid(0, 40, 0.5), np.arange(81) * 0.5)
    assert len(snr_grid(0, 1, 5)) == 1
    with pytest.raises(ValueError):
        snr_grid(1, 0, 0.5)
    with pytest.raises(ValueError):
        snr_grid(0, 1, 0)


def test_af_profile_interior_maximum():
    profile = sweep_snr_r(BASE, "AF", 0, 40, 0.5)
    values = [v for _, v in profile]
    i = int(np.argmax(values))
    assert 0 < i < len(values) - 1
    assert [s for s, _ in profile] == sorted(s for s, _ in profile)


def test_df_profile_nonincreasing_after_saturation():
    # legitimate DF capacity saturates once p_r * alpha_rd * rho >= p_s * alpha_sr
    sat_db = 10 * np.log10(BASE.p_s * BASE.alpha_sr / (BASE.alpha_rd * BASE.rho))
    profile = sweep_snr_r(BASE, "DF", 0, 40, 0.5)
    tail = [v for s, v in profile if s >= sat_db]
    assert len(tail) > 10
    assert np.all(np.diff(tail) <= 0)


def test_single_point_profile():
    res = optimize_snr_r(BASE, "AF", 12.0, 12.0, 0.01)
    assert len(res.profile) == 1
    assert res.snr_r_star_db == 12.0
    assert res.soc_star == soc_at_snr_r(BASE, "AF", 12.0)


def test_golden_section_on_parabola():
    x, fx = golden_section_max(lambda t: -((t - 1.234) ** 2), -5, 5, 1e-6)
    assert x == pytest.approx(1.234, abs=1e-6)
    assert fx == pytest.approx(0.0, abs=1e-11)


def test_af_optimum_matches_fine_grid():
    res = optimize_snr_r(BASE, "AF", 0, 40, 0.01)
    fine = sweep_snr_r(BASE, "AF", 0, 40, 0.01)
    s_best, v_best = max(fine, key=lambda t: t[1])
    assert abs(res.snr_r_star_db - s_best) <= 0.01
    assert res.soc_star >= v_best - 1e-6


def test_df_monotone_case_optimum_at_lower_edge():
    fine = sweep_snr_r(BASE, "DF", 25, 40, 0.01)
    diffs = np.diff([v for _, v in fine])
    # decreasing until the zero clamp takes over
    assert diffs[0] < 0 and np.all(diffs <= 0)
    res = optimize_snr_r(BASE, "DF", 25, 40, 0.01)
    assert res.snr_r_star_db == 25.0


def test_flat_objective():
    p = BASE.with_(alpha_re=0.0)
    res = optimize_snr_r(p, "DF", 30, 40, 0.01)
    flat = soc_at_snr_r(p, "DF", 30)
    assert 30 <= res.snr_r_star_db <= 40
    assert res.soc_star == pytest.approx(flat, rel=1e-12)


@given(st.sampled_from(["AF", "DF"]), st.floats(0.05, 3.0), st.floats(1e-4, 0.2))
def test_refinement_never_worse_than_grid(strategy, alpha_re, eps):
    p = BASE.with_(alpha_re=alpha_re, epsilon=eps)
    res = optimize_snr_r(p, strategy, 0, 40, 0.05)
    assert res.soc_star >= max(v for _, v in res.profile)


@given(st.sampled_from(["AF", "DF"]), st.floats(0.1, 10.0))
def test_bandwidth_rescaling(strategy, k):
    a = optimize_snr_r(BASE, strategy, 0, 40, 0.01)
    b = optimize_snr_r(BASE.with_(bandwidth_hz=BASE.bandwidth_hz * k), strategy, 0, 40, 0.01)
    assert b.snr_r_star_db == pytest.approx(a.snr_r_star_db, abs=1e-9)
    assert b.soc_star == pytest.approx(k * a.soc_star, rel=1e-9)
