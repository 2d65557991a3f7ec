import csv
import io
import json
import math

import pytest

from stable_info.capacity import ChannelSpec, capacity_stable
from stable_info.cli import (
    CONFIG_ENV_VAR,
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_VIOLATION,
    RunConfig,
    load_config,
    main,
    parse_law,
)
from stable_info.density import Cauchy, Gaussian, Laplace, SaS, Uniform
from stable_info.specfun import kappa_alpha


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestParseLaw:
    def test_known_laws(self):
        assert parse_law("gaussian:2") == Gaussian(2.0)
        assert parse_law("uniform:3") == Uniform(3.0)
        assert parse_law("laplace:0.5") == Laplace(0.5)
        assert parse_law("cauchy:1.5") == Cauchy(1.5)
        assert parse_law("sas:1.5:2") == SaS(1.5, 2.0)

    def test_default_parameter(self):
        assert parse_law("gaussian") == Gaussian(1.0)

    def test_unknown_law(self):
        with pytest.raises(ValueError):
            parse_law("beta:1:2")

    def test_sas_needs_two_args(self):
        with pytest.raises(ValueError):
            parse_law("sas:1.5")


class TestConfig:
    def test_defaults_validate(self):
        load_config()

    def test_file_and_overrides(self, tmp_path):
        p = tmp_path / "cfg"
        p.write_text("# comment\nn_points = 8192\nseed = 7\n")
        cfg = load_config(str(p), overrides={"seed": 9})
        assert cfg.n_points == 8192
        assert cfg.seed == 9

    def test_env_var_fallback(self, tmp_path, monkeypatch):
        p = tmp_path / "cfg"
        p.write_text("extent_factor = 120\n")
        monkeypatch.setenv(CONFIG_ENV_VAR, str(p))
        assert load_config().extent_factor == 120.0

    def test_unknown_key_rejected(self, tmp_path):
        p = tmp_path / "cfg"
        p.write_text("grid_size = 10\n")
        with pytest.raises(ValueError):
            load_config(str(p))

    def test_validation_rules(self):
        with pytest.raises(ValueError):
            RunConfig(n_points=1000).validate()
        with pytest.raises(ValueError):
            RunConfig(extent_factor=10).validate()
        with pytest.raises(ValueError):
            RunConfig(format="yaml").validate()


class TestTopLevel:
    def test_show_config(self, capsys):
        code, out, _ = run_cli(capsys, "--seed", "42", "--show-config")
        assert code == EXIT_OK
        assert json.loads(out)["seed"] == 42

    def test_no_command_prints_help(self, capsys):
        code, out, _ = run_cli(capsys)
        assert code == EXIT_CONFIG
        assert "usage:" in out

    def test_bad_config_file(self, capsys):
        code, _, err = run_cli(capsys, "--config", "/nonexistent", "--show-config")
        assert code == EXIT_CONFIG
        assert "configuration error" in err

    def test_bad_law_spec_exits_config(self, capsys):
        code, _, err = run_cli(
            capsys, "power-table", "--alphas", "1.5", "--laws", "beta:1"
        )
        assert code == EXIT_CONFIG
        assert "configuration error" in err


class TestPowerTable:
    def test_csv_values(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "power-table",
            "--alphas",
            "1.5,2.0",
            "--laws",
            "sas:1.5:1,gaussian:1.7",
        )
        assert code == EXIT_OK
        header, rows = read_csv(out)
        assert header[:3] == ["alpha", "law", "alpha_power"]
        table = {(r[0], r[1]): r for r in rows}
        closed = table[("1.5", "sas:1.5:1")]
        assert float(closed[2]) == pytest.approx(1.5 ** (1 / 1.5), rel=1e-9)
        assert closed[3] == "closed_form_stable"
        rms = table[("2.0", "gaussian:1.7")]
        assert float(rms[2]) == pytest.approx(1.7, rel=1e-9)
        heavy = table[("2.0", "sas:1.5:1")]
        assert heavy[2] == "infinite"

    def test_output_file_and_json(self, capsys, tmp_path):
        path = tmp_path / "out.json"
        code, out, _ = run_cli(
            capsys,
            "--format",
            "json",
            "--output",
            str(path),
            "power-table",
            "--alphas",
            "1.2",
            "--laws",
            "cauchy:1",
        )
        assert code == EXIT_OK
        assert out == ""
        doc = json.loads(path.read_text())
        assert doc[0]["law"] == "cauchy:1"
        assert float(doc[0]["alpha_power"]) > 0


class TestJalphaTable:
    def test_stable_diagonal_matches_closed_form(self, capsys):
        code, out, _ = run_cli(
            capsys, "jalpha-table", "--alphas", "1.8", "--rs", "1.8"
        )
        assert code == EXIT_OK
        header, rows = read_csv(out)
        assert header[2] == "J_alpha"
        rel = float(rows[0][4])
        assert abs(rel) < 0.01


class TestBoundCommands:
    def test_giie_table_holds(self, capsys):
        code, out, _ = run_cli(
            capsys, "giie-table", "--alphas", "1.8", "--rs", "1.0,1.8"
        )
        assert code == EXIT_OK
        _, rows = read_csv(out)
        k18 = kappa_alpha(1.8)
        assert all(float(r[2]) >= k18 - 1e-3 for r in rows)

    def test_giie_mix_small_sweep(self, capsys):
        code, out, _ = run_cli(capsys, "giie-mix", "--sigmas", "0,2.5")
        assert code == EXIT_OK
        _, rows = read_csv(out)
        assert [r[0] for r in rows] == ["0.0", "2.5"]

    def test_sum_bound(self, capsys):
        code, out, _ = run_cli(
            capsys, "sum-bound", "--laws", "laplace:1", "--alpha", "1.8", "--gamma", "0.8"
        )
        assert code == EXIT_OK
        _, rows = read_csv(out)
        assert float(rows[0][5]) >= -1e-3  # slack column

    def test_debruijn_check_passes(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "--format",
            "json",
            "debruijn-check",
            "--law",
            "sas:1.5:1",
            "--alpha",
            "1.5",
            "--eta",
            "0.5",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["relative_error"] < 0.01

    def test_debruijn_check_tight_tol_flags_violation(self, capsys):
        code, _, _ = run_cli(
            capsys, "debruijn-check", "--law", "gaussian:1", "--tol", "1e-12"
        )
        assert code == EXIT_VIOLATION


class TestCapacity:
    def test_matches_library(self, capsys):
        code, out, _ = run_cli(
            capsys, "capacity", "--alpha", "1.8", "--gamma-n", "1", "--A", "3"
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["C_nats"] == pytest.approx(
            capacity_stable(ChannelSpec(1.8, 1.0, 3.0)), rel=1e-12
        )
        assert doc["checks"]["power_combination"] == pytest.approx(3.0, rel=1e-9)

    def test_awgn(self, capsys):
        sigma, P = 1.0, 3.0
        code, out, _ = run_cli(
            capsys,
            "capacity",
            "--alpha",
            "2.0",
            "--gamma-n",
            str(sigma / math.sqrt(2.0)),
            "--A",
            str(math.sqrt(P + sigma**2)),
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["C_nats"] == pytest.approx(0.5 * math.log(1 + P / sigma**2), rel=1e-9)

    def test_invalid_channel_exits_config(self, capsys):
        code, _, err = run_cli(
            capsys, "capacity", "--alpha", "1.8", "--gamma-n", "1", "--A", "0.5"
        )
        assert code == EXIT_CONFIG
        assert "configuration error" in err


class TestCrbBench:
    def test_deterministic_and_above_bound(self, capsys, tmp_path):
        argv = [
            "crb-bench",
            "--alpha",
            "1.8",
            "--trials",
            "2000",
            "--seed",
            "0",
        ]
        code1, out1, _ = run_cli(capsys, *argv)
        code2, out2, _ = run_cli(capsys, *argv)
        assert code1 == code2 == EXIT_OK
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["error_alpha_power"] >= doc["crb"] * 0.98

    def test_errors_csv_written(self, capsys, tmp_path):
        path = tmp_path / "errors.csv"
        code, _, _ = run_cli(
            capsys,
            "crb-bench",
            "--trials",
            "50",
            "--seed",
            "1",
            "--errors-csv",
            str(path),
        )
        assert code == EXIT_OK
        header, rows = read_csv(path.read_text())
        assert header == ["error"]
        assert len(rows) == 50


class TestSuite:
    def test_runs_clean(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "suite")
        doc = json.loads(out)
        assert code == EXIT_OK
        assert doc["violations"] == []
        assert doc["results"]["kappa_2_unity"]["pass"]
        assert doc["results"]["giie_mix_bound"]["pass"]
