import subprocess
import sys
from pathlib import Path

import pytest

from mfcev.cds import CdsContract, cds_spread
from mfcev.cli import main
from mfcev.core import ModelParams

SPREAD_FLAGS = ["--alpha", "-2", "--beta", "1", "--hurst", "0.9",
                "--sigma0", "0.2", "--rate", "0.05",
                "--recovery", "0.5", "--maturity", "1"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpreadCommand:
    def test_benchmark_cell(self, capsys):
        code, out, _ = run_cli(capsys, "spread", *SPREAD_FLAGS)
        assert code == 0
        assert out == "121.0740\n"

    def test_full_recovery(self, capsys):
        flags = SPREAD_FLAGS[:-4] + ["--recovery", "1", "--maturity", "1"]
        code, out, _ = run_cli(capsys, "spread", *flags)
        assert code == 0 and out == "0.0000\n"

    def test_invalid_alpha_exits_2(self, capsys):
        flags = ["--alpha", "2"] + SPREAD_FLAGS[2:]
        code, _, err = run_cli(capsys, "spread", *flags)
        assert code == 2
        assert "alpha" in err

    def test_missing_flag_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "spread", "--alpha", "0", "--beta", "0.5",
                               "--hurst", "0.8", "--sigma0", "0.2", "--rate", "0.05",
                               "--maturity", "5")
        assert code == 2
        assert "recovery" in err

    def test_unknown_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["spread", "--frobnicate", "1"] + SPREAD_FLAGS)
        assert exc.value.code == 2

    def test_precision_override(self, capsys):
        code, out, _ = run_cli(capsys, "spread", *SPREAD_FLAGS, "--precision", "8")
        assert code == 0
        assert out.strip() == f"{float(out):.8f}"

    def test_equals_style_flags(self, capsys):
        code, out, _ = run_cli(capsys, "spread", "--alpha=-2", "--beta=1",
                               "--hurst=0.9", "--sigma0=0.2", "--rate=0.05",
                               "--recovery=0.5", "--maturity=1")
        assert code == 0 and out == "121.0740\n"


class TestTable1Command:
    def test_default_grid(self, capsys):
        code, out, _ = run_cli(capsys, "table1")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "beta,hurst,alpha,maturity,spread_bps"
        assert len(lines) == 41
        rows = {tuple(line.split(",")[:4]): line.split(",")[4] for line in lines[1:]}
        assert rows[("0", "-", "0", "1")] == "0.0015"
        assert rows[("1", "0.8", "-2", "5")] == "265.8567"
        assert rows[("0.5", "0.9", "-2", "2")] == "104.3824"

    def test_byte_stable(self, capsys):
        _, first, _ = run_cli(capsys, "table1", "--maturities", "1,2")
        _, second, _ = run_cli(capsys, "table1", "--maturities", "1,2")
        assert first == second

    def test_maturity_restriction(self, capsys):
        code, out, _ = run_cli(capsys, "table1", "--maturities", "1")
        assert code == 0
        assert len(out.strip().split("\n")) == 11

    def test_output_file_has_lf_endings(self, capsys, tmp_path):
        target = tmp_path / "table.csv"
        code, out, _ = run_cli(capsys, "table1", "--maturities", "1",
                               "--output", str(target))
        assert code == 0 and out == ""
        raw = target.read_bytes()
        assert b"\r" not in raw and raw.endswith(b"\n")
        assert raw.decode().split("\n")[0] == "beta,hurst,alpha,maturity,spread_bps"

    def test_round_trip(self, capsys):
        _, out, _ = run_cli(capsys, "table1", "--maturities", "5")
        for line in out.strip().split("\n")[1:]:
            beta, hurst, alpha, maturity, bps = line.split(",")
            params = ModelParams(r=0.05, sigma0=0.2, alpha=float(alpha),
                                 beta=float(beta),
                                 hurst=0.8 if hurst == "-" else float(hurst),
                                 s0=50.0)
            direct = cds_spread(CdsContract(maturity=float(maturity), recovery=0.5),
                                params)
            assert abs(float(bps) - direct) <= 5.1e-5  # half-ulp of 4 decimals


class TestCurveCommand:
    CURVE_FLAGS = ["--alpha", "0", "--sigma0", "0.2", "--rate", "0.05",
                   "--tmax", "10", "--points", "21"]

    def test_single_series(self, capsys):
        code, out, _ = run_cli(capsys, "curve", *self.CURVE_FLAGS,
                               "--beta", "0.5", "--hurst", "0.8")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,q"
        assert len(lines) == 22
        assert lines[1] == "0,0"
        qs = [float(line.split(",")[1]) for line in lines[1:]]
        assert all(0.0 <= q <= 1.0 for q in qs)
        assert all(b >= a for a, b in zip(qs, qs[1:]))

    def test_two_points(self, capsys):
        code, out, _ = run_cli(capsys, "curve", "--alpha", "0", "--sigma0", "0.2",
                               "--rate", "0.05", "--tmax", "2", "--points", "2",
                               "--beta", "0", "--hurst", "0.8")
        assert code == 0
        assert len(out.strip().split("\n")) == 3

    def test_overlay_series_ordering(self, capsys):
        code, out, _ = run_cli(capsys, "curve", *self.CURVE_FLAGS,
                               "--series", "0", "--series", "1:0.9")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,q_b0,q_b1_H0.9"
        for line in lines[1:]:
            _, q_classical, q_fractional = (float(tok) for tok in line.split(","))
            assert q_fractional >= q_classical

    def test_fractional_series_requires_hurst(self, capsys):
        code, _, err = run_cli(capsys, "curve", *self.CURVE_FLAGS, "--series", "1")
        assert code == 2 and "hurst" in err.lower()

    def test_missing_tmax_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "curve", "--alpha", "0", "--sigma0", "0.2",
                               "--rate", "0.05", "--points", "5", "--beta", "0")
        assert code == 2 and "tmax" in err


class TestValidateCommand:
    VALIDATE_FLAGS = ["--alpha", "0", "--beta", "0", "--hurst", "0.8",
                      "--sigma0", "0.2", "--rate", "0.05", "--maturity", "5",
                      "--paths", "20000", "--steps", "500", "--seed", "4242"]

    def test_passing_report(self, capsys):
        code, out, _ = run_cli(capsys, "validate", *self.VALIDATE_FLAGS)
        assert code == 0
        fields = dict(line.split(" ", 1) for line in out.strip().split("\n"))
        assert abs(float(fields["z_score"])) <= 4.0
        assert fields["result"].startswith("PASS")
        assert float(fields["mc_q_std_error"]) > 0.0
        assert float(fields["analytic_spread_bps"]) > 0.0

    def test_report_is_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, "validate", *self.VALIDATE_FLAGS)
        _, second, _ = run_cli(capsys, "validate", *self.VALIDATE_FLAGS)
        assert first == second

    def test_zero_paths_exits_2(self, capsys):
        flags = self.VALIDATE_FLAGS[:-6] + ["--paths", "0", "--steps", "10",
                                            "--seed", "1"]
        code, _, err = run_cli(capsys, "validate", *flags)
        assert code == 2 and "n_paths" in err


class TestScenarioFile:
    def test_scenario_supplies_defaults_and_flags_win(self, capsys, tmp_path):
        scenario = tmp_path / "base.scn"
        scenario.write_text(
            "# benchmark point\n"
            "alpha = -2\n"
            "beta = 1\n"
            "hurst = 0.9\n"
            "sigma0 = 0.2\n"
            "rate = 0.05\n"
            "recovery = 0.5\n"
            "maturity = 1\n")
        code, out, _ = run_cli(capsys, "spread", "--scenario", str(scenario))
        assert code == 0 and out == "121.0740\n"
        # explicit flag overrides the file
        code, out, _ = run_cli(capsys, "spread", "--scenario", str(scenario),
                               "--recovery", "1")
        assert code == 0 and out == "0.0000\n"

    def test_unknown_key_rejected(self, capsys, tmp_path):
        scenario = tmp_path / "bad.scn"
        scenario.write_text("alfa = 1\n")
        code, _, err = run_cli(capsys, "spread", "--scenario", str(scenario))
        assert code == 2 and "alfa" in err

    def test_bad_value_rejected(self, capsys, tmp_path):
        scenario = tmp_path / "bad.scn"
        scenario.write_text("alpha = fast\n")
        code, _, err = run_cli(capsys, "spread", "--scenario", str(scenario))
        assert code == 2

    def test_missing_file_rejected(self, capsys):
        code, _, err = run_cli(capsys, "spread", "--scenario", "/nonexistent.scn")
        assert code == 2

    def test_constraints_enforced_from_scenario(self, capsys, tmp_path):
        scenario = tmp_path / "bad.scn"
        scenario.write_text("alpha = 3\nbeta = 0\nhurst = 0.8\nsigma0 = 0.2\n"
                            "rate = 0.05\nrecovery = 0.5\nmaturity = 1\n")
        code, _, err = run_cli(capsys, "spread", "--scenario", str(scenario))
        assert code == 2 and "alpha" in err


def test_module_entry_point():
    root = Path(__file__).resolve().parents[1]
    proc = subprocess.run(
        [sys.executable, "-m", "mfcev", "spread", *SPREAD_FLAGS],
        capture_output=True, text=True,
        env={"PYTHONPATH": str(root / "src"), "PATH": "/usr/bin:/bin"})
    assert proc.returncode == 0
    assert proc.stdout == "121.0740\n"
