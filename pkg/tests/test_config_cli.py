import os

import numpy as np
import pytest

from orbitherm.cli import main
from orbitherm.config import ConfigError, build_scenario, config_digest, load_config


def test_empty_config_is_nominal():
    cfg = load_config(None)
    assert cfg["preset"] == "nominal"
    scenario = build_scenario(cfg)
    assert scenario.duration == 6.0e6
    assert scenario.inner.rheology.model == "maxwell"
    assert scenario.inner.initial_e == 5e-4


def test_unknown_key_named_in_error(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("scenario:\n  duration_yr: 10\n  warp_factor: 9\n")
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "scenario.warp_factor" in str(err.value)


def test_bad_preset_rejected(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("preset: quixotic\n")
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "preset" in str(err.value)


def test_digest_stable_under_key_order(tmp_path):
    p1 = tmp_path / "a.yaml"
    p1.write_text("scenario:\n  duration_yr: 100\n  grid_points: 80\n")
    p2 = tmp_path / "b.yaml"
    p2.write_text("scenario:\n  grid_points: 80\n  duration_yr: 100\n")
    assert config_digest(load_config(p1)) == config_digest(load_config(p2))


def test_extremal_presets_built_from_config(tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text("preset: extremal-andrade\nrheology:\n  andrade_beta: 1.0e-12\n")
    scenario = build_scenario(load_config(path))
    assert scenario.inner.rheology.model == "andrade"
    assert scenario.inner.rheology.andrade_beta == 1e-12
    assert scenario.inner.initial_e == 0.5


def _run(argv):
    assert main(argv) == 0


def test_cli_rheology_outputs(tmp_path):
    out = tmp_path / "r"
    _run(["rheology", "--out", str(out)])
    files = sorted(os.listdir(out))
    assert files == ["rheology_andrade.csv", "rheology_burgers.csv",
                     "rheology_maxwell.csv", "viscosity.csv"]
    visc = [l for l in (out / "viscosity.csv").read_text().splitlines()
            if not l.startswith("#")]
    assert visc[0] == "T_K,eta_Pas"
    etas = [float(l.split(",")[1]) for l in visc[1:]]
    assert all(a > b for a, b in zip(etas, etas[1:]))
    text = (out / "rheology_maxwell.csv").read_text()
    assert text.startswith("# orbitherm ")
    assert "# config " in text
    # Maxwell Q exceeds the other two pointwise
    def col(name):
        lines = [l for l in (out / name).read_text().splitlines()
                 if not l.startswith("#") and not l.startswith("t_melt")]
        return np.array([[float(x) for x in l.split(",")] for l in lines])
    qm = col("rheology_maxwell.csv")[:, 1]
    qb = col("rheology_burgers.csv")[:, 1]
    qa = col("rheology_andrade.csv")[:, 1]
    assert np.all(qm > qb) and np.all(qm > qa)


def test_cli_estimate_outputs(tmp_path):
    out = tmp_path / "e"
    _run(["estimate", "--out", str(out)])
    lines = (out / "estimate.csv").read_text().splitlines()
    body = [l for l in lines if not l.startswith("#")][1:]
    rows = np.array([[float(x) for x in l.split(",")] for l in body])
    zero_e = rows[rows[:, 0] == 0.0]
    assert np.all(zero_e[:, 2] == 0.0)
    # monotone in e at fixed Q
    q0 = rows[rows[:, 1] == rows[0, 1]]
    assert np.all(np.diff(q0[:, 2]) >= 0)


def test_cli_simulate_and_byte_identity(tmp_path):
    out1, out2 = tmp_path / "s1", tmp_path / "s2"
    argv = ["simulate", "--preset", "nominal", "--duration", "1200", "--out"]
    cfgfile = tmp_path / "cfg.yaml"
    cfgfile.write_text(
        "scenario:\n  grid_points: 60\n  output_every: 3\n"
        "  thermal_profile: uniform-equilibrium\n"
    )
    _run(argv + [str(out1), "--config", str(cfgfile)])
    _run(argv + [str(out2), "--config", str(cfgfile)])
    assert (out1 / "series.csv").read_bytes() == (out2 / "series.csv").read_bytes()
    assert (out1 / "summary.csv").read_bytes() == (out2 / "summary.csv").read_bytes()
    summary = (out1 / "summary.csv").read_text()
    assert "final_e5" in summary and "min_q5" in summary


def test_cli_simulate_zero_duration_header_only(tmp_path):
    out = tmp_path / "z"
    cfgfile = tmp_path / "cfg.yaml"
    cfgfile.write_text("scenario:\n  grid_points: 60\n"
                       "  thermal_profile: uniform-equilibrium\n")
    _run(["simulate", "--duration", "0", "--out", str(out),
          "--config", str(cfgfile)])
    lines = [l for l in (out / "series.csv").read_text().splitlines()
             if not l.startswith("#")]
    assert lines == [",".join(
        __import__("orbitherm.coupling", fromlist=["RECORD_COLUMNS"]).RECORD_COLUMNS
    )]


def test_cli_map_smoke(tmp_path):
    out = tmp_path / "m"
    _run(["map", "--model", "averaged", "--grid", "4", "--span", "15",
          "--out", str(out), "--workers", "1"])
    assert sorted(os.listdir(out)) == ["map.csv", "map.pgm"]


def test_cli_config_error_exit_code(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("nonsense_key: 1\n")
    assert main(["estimate", "--out", str(tmp_path / "x"),
                 "--config", str(bad)]) == 2


@pytest.mark.slow
def test_cli_profile_outputs(tmp_path):
    out = tmp_path / "p"
    _run(["profile", "--out", str(out), "--points", "100"])
    files = sorted(os.listdir(out))
    assert files == ["miranda_cold.csv", "miranda_warm.csv",
                     "umbriel_cold.csv", "umbriel_warm.csv"]
    for name in ("miranda", "umbriel"):
        def temps(tag):
            lines = [l for l in (out / f"{name}_{tag}.csv").read_text().splitlines()
                     if not l.startswith("#") and not l.startswith("r_km")]
            return np.array([float(l.split(",")[1]) for l in lines])
        warm, cold = temps("warm"), temps("cold")
        assert np.all(warm >= cold - 1e-6)
        assert np.all(cold >= 83.9)
