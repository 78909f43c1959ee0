import math

import numpy as np
import pytest

import mimo_pass as mp


@pytest.fixture
def cfg():
    c = mp.ScenarioConfig()
    c.grid_L = 256
    return c


def test_config_defaults(cfg):
    assert (cfg.M, cfg.N, cfg.K) == (5, 6, 4)
    assert cfg.spacing == pytest.approx(1.5)
    assert cfg.min_gap == pytest.approx(cfg.wavelength / 2)
    cfg.grid_L = 1
    with pytest.raises(mp.ConfigError):
        cfg.validate()


def test_seed_scenario_is_deterministic(cfg):
    users, L0 = mp.seed_scenario(cfg, 3)
    assert users.shape == (4, 3)
    assert L0.shape == (6, 5)
    assert np.array_equal(users, mp.sample_users(cfg, 3))
    assert mp.is_feasible(cfg, L0)
    users2, L2 = mp.seed_scenario(cfg, 3)
    assert np.array_equal(L0, L2)


def test_channel_and_zf(cfg):
    users, L0 = mp.seed_scenario(cfg, 1)
    G = mp.channel_matrix(cfg, users, L0)
    assert G.shape == (5, 4) and G.dtype == np.complex128
    W = mp.zf_precoder(G, 1e-3)
    GtW = G.T @ W
    off = GtW - np.diag(np.diag(GtW))
    assert np.abs(off).max() <= 1e-9 * np.linalg.norm(np.diag(GtW))
    assert np.sum(np.abs(W) ** 2) == pytest.approx(1e-3, rel=1e-9)


def test_fp_improves_on_zf(cfg):
    users, L0 = mp.seed_scenario(cfg, 2)
    zf = mp.run_zf(cfg, users, L0)
    fp = mp.run_fp_bcd(cfg, users, zf["W"], zf["L"])
    assert fp["sum_rate_nats"] >= fp["trace"]["objective"][0]
    assert np.all(np.diff(fp["trace"]["objective"]) >= -1e-9 * fp["trace"]["objective"][0])
    assert mp.is_feasible(cfg, fp["L"])


def test_uplink_and_baselines(cfg):
    users, L0 = mp.seed_scenario(cfg, 4)
    ul = mp.run_greedy_uplink(cfg, users, L0)
    assert ul["M"].shape == (5, 4)
    assert math.isfinite(ul["sum_rate_nats"]) and ul["sum_rate_nats"] > 0
    _, small = mp.run_baseline_dl(cfg, users, 5)
    _, large = mp.run_baseline_dl(cfg, users, 30)
    assert small > 0 and large > 0
    _, rate_ul = mp.run_baseline_ul(cfg, users, 5)
    assert rate_ul > 0


def test_run_single_flags(cfg):
    rec = mp.run_single(cfg, "dl-fp", 0)
    assert rec["ok"]
    assert rec["sum_rate_bits"] >= rec["warm_start_bits"]
    assert rec["sum_rate_bits"] == pytest.approx(rec["sum_rate_nats"] / math.log(2))
    assert "trace" in rec
    rec = mp.run_single(cfg, "ul-baseline-hmimo", 0)
    assert not rec["ok"] and rec["flags"] == ["unsupported_algorithm"]
    with pytest.raises(mp.ConfigError):
        mp.run_single(cfg, "no-such-mode", 0)


def test_infeasible_layout_raises(cfg):
    users, _ = mp.seed_scenario(cfg, 0)
    with pytest.raises(mp.FeasibilityError):
        mp.channel_matrix(cfg, users, np.zeros((6, 5)))


def test_cli_in_process(tmp_path):
    out = tmp_path / "res"
    rc = mp.cli_main(["--preset", "desk", "--grid", "128", "--mode", "dl-zf", "--seeds", "2", "--out", str(out)])
    assert rc == 0
    lines = (out / "runs.csv").read_text().splitlines()
    assert lines[0].startswith("mode,sweep_axis,sweep_value,seed")
    assert len(lines) == 3
    assert mp.cli_main(["--config", str(tmp_path / "missing.cfg"), "--out", str(tmp_path / "none")]) != 0
    assert not (tmp_path / "none").exists()
