import json

import pytest

from phonon_blockade import cli, scenarios
from phonon_blockade.errors import ConfigError


def write_cfg(path, **payload):
    path.write_text(json.dumps(payload))
    return str(path)


def read_files(d):
    return {p.name: p.read_bytes() for p in sorted(d.iterdir()) if p.suffix == ".csv"}


def test_full_model_check_passes(tmp_path, capsys):
    cfg = write_cfg(tmp_path / "c.json", physical=scenarios.DEFAULT_PHYSICAL)
    code = cli.main(["full-model-check", "--config", cfg, "--out", str(tmp_path / "o")])
    assert code == 0
    report = json.loads((tmp_path / "o" / "full-model-check_report.json").read_text())
    assert report["scenario"] == "full-model-check" and report["pass"]
    for check in report["checks"]:
        assert set(check) == {"name", "expected", "observed", "tolerance", "pass"}
    assert report["runtime_seconds"] >= 0
    assert "PASS" in capsys.readouterr().out


def test_fig4b_threshold_check(tmp_path):
    cfg = write_cfg(tmp_path / "c.json", reduced=scenarios.DEFAULT_REDUCED["fig4b"])
    assert cli.main(["fig4b", "--config", cfg, "--out", str(tmp_path / "o")]) == 0
    report = json.loads((tmp_path / "o" / "fig4b_report.json").read_text())
    (check,) = [c for c in report["checks"] if c["name"] == "smallest_kappa_with_F_0.95"]
    assert check["pass"] and check["observed"] <= 10


def test_fig4a_monotone_and_deterministic_across_threads(tmp_path):
    cfg = write_cfg(tmp_path / "c.json", reduced=scenarios.DEFAULT_REDUCED["fig4a"])
    assert cli.main(["fig4a", "--config", cfg, "--out", str(tmp_path / "a")]) == 0
    assert cli.main(["fig4a", "--config", cfg, "--out", str(tmp_path / "b"), "--threads", "4"]) == 0
    a, b = read_files(tmp_path / "a"), read_files(tmp_path / "b")
    assert a and a == b


def test_fig2_small_grid(tmp_path):
    cfg = write_cfg(tmp_path / "c.json", reduced=scenarios.DEFAULT_REDUCED["fig2"],
                    grid={"nx": 81, "ny": 81})
    assert cli.main(["fig2", "--config", cfg, "--out", str(tmp_path / "o")]) == 0
    names = {c["name"]: c for c in json.loads((tmp_path / "o" / "fig2_report.json").read_text())["checks"]}
    assert names["s=0_min_value_nonnegative"]["pass"]
    assert names["s=1/2_is_negative"]["pass"]
    assert (tmp_path / "o" / "fig2_qpd_s0.5.csv").exists()


def test_env_output_dir(tmp_path, monkeypatch):
    cfg = write_cfg(tmp_path / "c.json", physical=scenarios.DEFAULT_PHYSICAL)
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "env"))
    assert cli.main(["full-model-check", "--config", cfg]) == 0
    assert (tmp_path / "env" / "full-model-check_report.json").exists()


def test_usage_errors(tmp_path):
    cfg = write_cfg(tmp_path / "c.json", reduced=scenarios.DEFAULT_REDUCED["fig2"])
    assert cli.main(["fig9", "--config", cfg]) == 2
    assert cli.main(["fig2"]) == 2
    assert cli.main(["fig2", "--config", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["fig2", "--config", cfg, "--threads", "0"]) == 2
    assert cli.main(["fig2", "--config", cfg, "--seed", "-1"]) == 2


def test_config_errors(tmp_path):
    both = write_cfg(tmp_path / "both.json", reduced=scenarios.DEFAULT_REDUCED["fig2"],
                     physical=scenarios.DEFAULT_PHYSICAL)
    assert cli.main(["fig2", "--config", both]) == 2
    extra = write_cfg(tmp_path / "extra.json", reduced=scenarios.DEFAULT_REDUCED["fig2"], colour="red")
    assert cli.main(["fig2", "--config", extra]) == 2
    wrong = write_cfg(tmp_path / "wrong.json", scenario="fig3a", reduced=scenarios.DEFAULT_REDUCED["fig2"])
    assert cli.main(["fig2", "--config", wrong]) == 2
    bad = write_cfg(tmp_path / "bad.json", reduced={"epsilon": 1.0})
    assert cli.main(["fig2", "--config", bad]) == 2
    neg = write_cfg(tmp_path / "neg.json", reduced={"epsilon": 1, "kappa": 1, "gamma": -1, "nbar": 0})
    assert cli.main(["fig2", "--config", neg]) == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert cli.main(["fig2", "--config", str(tmp_path / "junk.json")]) == 2


def test_unwritable_output(tmp_path):
    cfg = write_cfg(tmp_path / "c.json", physical=scenarios.DEFAULT_PHYSICAL)
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert cli.main(["full-model-check", "--config", cfg, "--out", str(blocker / "sub")]) == 2


def test_failing_check_exit_code(tmp_path):
    # a warm bath keeps F below 0.95 for every kappa in the sweep
    cfg = write_cfg(tmp_path / "c.json", reduced={"epsilon": 3.0, "kappa": 30.0, "gamma": 1.0, "nbar": 0.3})
    assert cli.main(["fig4b", "--config", cfg, "--out", str(tmp_path / "o")]) == 1


def test_scenario_config_invariants():
    with pytest.raises(ConfigError):
        scenarios.ScenarioConfig(scenario="fig2")
    with pytest.raises(ConfigError):
        scenarios.ScenarioConfig(scenario="nope", reduced={})
    with pytest.raises(ConfigError):
        scenarios.ScenarioConfig(scenario="fig2", reduced=scenarios.DEFAULT_REDUCED["fig2"], dim=2)
    for name in scenarios.SCENARIOS:
        cfg = scenarios.default_config(name)
        assert (cfg.reduced is None) != (cfg.physical is None)


def test_physical_block_maps_to_kerr(tmp_path):
    phys = dict(scenarios.DEFAULT_PHYSICAL, B=1.0, I_0=-0.0008, gamma=0.0008, T=0.2)
    cfg = scenarios.ScenarioConfig(scenario="fig4b", physical=phys)
    r = cfg.params()
    assert r.kappa == pytest.approx(0.008)
    assert r.epsilon == pytest.approx(0.0008)


def test_oversized_model_is_config_error(tmp_path):
    cfg = write_cfg(tmp_path / "c.json", reduced={"epsilon": 30.0, "kappa": 30.0, "gamma": 1.0, "nbar": 0.0})
    assert cli.main(["fig4b", "--config", cfg, "--out", str(tmp_path / "o")]) == 2
