import subprocess
import sys

import numpy as np
import pytest

import henonlab as hl
from henonlab import report_io
from henonlab.cli import main, parse_alphas
from henonlab.errors import InvalidArgsError

GOLDEN_HEADER_M2_N3 = (
    "alpha,M,amplitude_v,gap_v,gap_dv,plateau_gap,"
    "r_zero_1,t_zero_1,zero_diag_1,n_scaled_1,"
    "r_zero_2,t_zero_2,zero_diag_2,n_scaled_2,"
    "lam_1,lam_hat_1,lam_hat_over_a2_1,eigen_gap_1,"
    "lam_2,lam_hat_2,lam_hat_over_a2_2,eigen_gap_2,"
    "morse_total,J,bound_J,K,bound_K,"
    "level_C,nehari_resid,grad_resid,ode_resid,best_scaled,best_gap,error"
)


def test_report_round_trip(tmp_path):
    path = tmp_path / "report.txt"
    manifest = {"command": "solve", "p": 3.0, "note": "free text"}
    scalars = {"amplitude": 12.287043205631136, "count": 3, "flag": True}
    arrays = {"x": np.array([1e-300, -2.5, 0.1 + 0.2])}
    report_io.write_report(path, "profile", manifest, scalars, arrays)
    back = report_io.read_report(path)
    assert back["kind"] == "profile"
    assert back["manifest"]["command"] == "solve"
    assert back["manifest"]["p"] == 3.0
    assert back["scalars"]["amplitude"] == scalars["amplitude"]  # bit-exact repr round trip
    assert back["scalars"]["count"] == 3 and back["scalars"]["flag"] is True
    assert np.array_equal(back["arrays"]["x"], arrays["x"])


def test_config_hash_ignores_order():
    a = report_io.config_hash({"p": 3.0, "N": 3})
    b = report_io.config_hash({"N": 3, "p": 3.0})
    assert a == b
    assert a != report_io.config_hash({"N": 3, "p": 3.5})


def test_parse_alphas():
    assert parse_alphas("10,20,40") == (10.0, 20.0, 40.0)
    assert parse_alphas("10:320:geometric") == (10.0, 20.0, 40.0, 80.0, 160.0, 320.0)
    with pytest.raises(InvalidArgsError):
        parse_alphas("ten,twenty")
    with pytest.raises(InvalidArgsError):
        parse_alphas("")
    with pytest.raises(InvalidArgsError):
        parse_alphas("1:2:3:geometric")


def test_solve_writes_profile(tmp_path, capsys):
    out = tmp_path / "profile.txt"
    code = main(["solve", "--p", "3", "--N", "3", "--alpha", "50", "--m", "2",
                 "--out", str(out)])
    assert code == 0
    data = report_io.read_report(out)
    assert data["kind"] == "profile"
    assert data["scalars"]["nodal_sets"] == 2
    zeros = data["arrays"]["zeros"]
    assert len(zeros) == 2 and zeros[-1] == 1.0 and 0.0 < zeros[0] < 1.0
    assert data["manifest"]["input_hash"]


def test_solve_rejects_supercritical_weight(tmp_path, capsys):
    code = main(["solve", "--p", "3", "--N", "5", "--alpha", "0.5", "--m", "1",
                 "--out", str(tmp_path / "x.txt")])
    assert code == 2
    assert "alpha_p" in capsys.readouterr().err


def test_solve_planar_t_profile_is_the_limit_profile(tmp_path, lane_emden_m1):
    out = tmp_path / "planar.txt"
    code = main(["solve", "--p", "3", "--N", "2", "--alpha", "7", "--m", "1",
                 "--var", "t", "--out", str(out)])
    assert code == 0
    data = report_io.read_report(out)
    assert data["scalars"]["amplitude"] == pytest.approx(lane_emden_m1.amplitude, rel=1e-12)
    assert data["scalars"]["weight_power"] == 2.0


def test_solve_deterministic_output(tmp_path):
    out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
    argv = ["solve", "--p", "3", "--N", "3", "--alpha", "9", "--m", "1"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    a, b = report_io.read_report(out1), report_io.read_report(out2)
    assert a["manifest"]["input_hash"] == b["manifest"]["input_hash"]
    for key in a["arrays"]:
        assert np.array_equal(a["arrays"][key], b["arrays"][key])
    assert a["scalars"] == b["scalars"]


def test_spectrum_counts_and_refinement(tmp_path):
    out = tmp_path / "spec.txt"
    base = ["spectrum", "--p", "3", "--N", "3", "--alpha", "25", "--m", "2",
            "--out", str(out)]
    assert main(base + ["--mesh-n", "8000"]) == 0
    lam8 = report_io.read_report(out)["arrays"]["lambda_small"]
    assert len(lam8) == 2 and np.all(lam8 < 0)
    assert main(base + ["--mesh-n", "16000"]) == 0
    lam16 = report_io.read_report(out)["arrays"]["lambda_small"]
    assert np.max(np.abs(lam16 - lam8)) < 1e-6


def test_spectrum_zero_potential_flag(tmp_path):
    out = tmp_path / "spec0.txt"
    code = main(["spectrum", "--p", "3", "--N", "3", "--alpha", "25", "--m", "2",
                 "--mesh-n", "2000", "--zero-potential", "--out", str(out)])
    assert code == 0
    data = report_io.read_report(out)
    assert data["scalars"]["found"] == 0
    assert data["arrays"]["lambda_small"].size == 0


def test_morse_pipeline_and_bounds(tmp_path):
    out = tmp_path / "morse.txt"
    code = main(["morse", "--p", "3", "--N", "3", "--alpha", "200", "--m", "2",
                 "--theta", "1.1", "--mesh-n", "4000", "--out", str(out)])
    assert code == 0
    data = report_io.read_report(out)
    s = data["scalars"]
    assert s["total_index"] >= s["bound_J"]
    assert s["total_index"] >= s["bound_K"]
    # the report arithmetic is re-derivable from the eigenvalue list alone
    again = hl.morse_index(data["arrays"]["lambda_hat"], 3)
    assert again.total_index == s["total_index"]


def test_morse_theta_validation(tmp_path, capsys):
    code = main(["morse", "--p", "3", "--N", "3", "--alpha", "50", "--m", "2",
                 "--theta", "0.9", "--out", str(tmp_path / "m.txt")])
    assert code == 2
    out = tmp_path / "m1.txt"
    code = main(["morse", "--p", "3", "--N", "3", "--alpha", "50", "--m", "1",
                 "--theta", "1.5", "--mesh-n", "4000", "--out", str(out)])
    assert code == 0
    assert "omitted" in capsys.readouterr().err
    data = report_io.read_report(out)
    assert data["scalars"]["K"] == "" and data["scalars"]["bound_K"] == ""


def test_sweep_csv_golden_header(tmp_path, capsys):
    assert report_io.sweep_csv_columns(2, 3) == GOLDEN_HEADER_M2_N3.split(",")
    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--p", "3", "--N", "3", "--m", "2", "--alphas", "10,20,40",
                 "--mesh-n", "2000", "--checks", "identities,level_monotone",
                 "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    data_lines = [ln for ln in lines if not ln.startswith("#")]
    assert data_lines[0] == GOLDEN_HEADER_M2_N3
    assert len(data_lines) == 4  # header + one row per alpha
    first = data_lines[1].split(",")
    assert float(first[0]) == 10.0
    # floats serialize as shortest round-trip decimals
    assert repr(float(first[1])) == first[1]


def test_sweep_malformed_alphas(tmp_path, capsys):
    code = main(["sweep", "--alphas", "oops", "--out", str(tmp_path / "s.csv")])
    assert code == 2


def test_sweep_single_alpha_trend_insufficient(tmp_path, capsys):
    out = tmp_path / "one.csv"
    code = main(["sweep", "--p", "3", "--N", "3", "--m", "2", "--alphas", "40",
                 "--mesh-n", "2000", "--checks", "plateau", "--out", str(out)])
    assert code == 4
    assert "insufficient rows" in capsys.readouterr().out
    assert out.exists()  # rows are written even when checks fail


def test_sweep_exit_codes_reflect_known_red_checks(tmp_path, capsys):
    # the profile-limit and plateau final thresholds sit below the measured
    # 1/alpha convergence at these weights, so the default check set fails;
    # excluding those two checks the same sweep exits clean
    out = tmp_path / "sweep_full.csv"
    argv = ["sweep", "--p", "3", "--N", "3", "--m", "2",
            "--alphas", "10:320:geometric", "--out", str(out)]
    code = main(argv)
    captured = capsys.readouterr().out
    assert code == 4
    assert "check profile_limit: FAIL" in captured
    assert "check plateau: FAIL" in captured
    assert "check identities: PASS" in captured
    passing = ("zero_rate,extrema_envelope,identities,eigen_limit,expansion_fit,"
               "level_monotone,morse_bounds,morse_monotone")
    code = main(argv + ["--checks", passing])
    assert code == 0


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "henonlab.cli", "solve", "--p", "3", "--N", "3",
         "--alpha", "4", "--m", "1", "--out", "prof.txt"],
        capture_output=True, text=True, cwd="/tmp",
    )
    assert proc.returncode == 0, proc.stderr
    assert "1-nodal profile" in proc.stdout
