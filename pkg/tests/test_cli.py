import json

import pytest

from hypertheta.cli import main, parse_complex


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_complex():
    assert parse_complex("i") == 1j
    assert parse_complex("2i") == 2j
    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex("-1.5-0.3i") == -1.5 - 0.3j
    assert parse_complex("3") == 3 + 0j
    assert parse_complex("1e-3+2e-2i") == 1e-3 + 2e-2j
    with pytest.raises(ValueError):
        parse_complex("foo")
    with pytest.raises(ValueError):
        parse_complex("")


def test_verify_jacobi_exit_zero(capsys):
    code, out, err = run_cli(capsys, ["verify", "--identity", "jacobi", "--tau", "i"])
    assert code == 0
    rec = json.loads(out.strip())
    assert rec["identity"] == "jacobi"
    assert rec["relative_residual"] < 1e-10
    assert abs(rec["empirical_sign"][0] + 1.0) < 1e-10
    assert "PASS" in err


def test_verify_failure_exit_one(capsys):
    code, out, err = run_cli(
        capsys,
        ["verify", "--identity", "jacobi", "--tau", "i", "--residual-tolerance", "0"],
    )
    assert code == 1
    assert "FAIL" in err


def test_verify_needs_valid_tau(capsys):
    code, _, err = run_cli(capsys, ["verify", "--identity", "jacobi", "--tau=-i"])
    assert code == 2
    assert "error" in err


def test_malformed_curve_exit_two(capsys):
    code, _, err = run_cli(capsys, ["periods", "--roots", "0,1,1"])
    assert code == 2


def test_malformed_complex_exit_two(capsys):
    code, _, _ = run_cli(capsys, ["periods", "--roots", "0,1,zzz"])
    assert code == 2


def test_chars_listing(capsys):
    code, out, _ = run_cli(capsys, ["chars", "--genus", "2", "--list-F"])
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["odd_count"] == 6
    assert data["system_count"] == 15
    assert data["system_count_deduped"] == 15
    assert len(data["fundamental_systems"]) == 15
    sys0 = data["fundamental_systems"][0]
    assert len(sys0["odd"]) == 2 and len(sys0["even"]) == 4


def test_chars_query(capsys):
    code, out, _ = run_cli(capsys, ["chars", "--genus", "1", "--char", "1|1"])
    data = json.loads(out)
    assert data["queried"] == {"char": "1|1", "parity": -1}


def test_periods_emits_j_invariant(capsys):
    code, out, _ = run_cli(capsys, ["periods", "--genus", "1", "--roots=-1,0,1"])
    assert code == 0
    data = json.loads(out)
    assert abs(data["j_invariant"][0] - 1728.0) < 1e-7
    assert len(data["tau"]) == 1
    assert data["dictionary_worst_residual"] < 1e-8


def test_theta_value_and_gradient(capsys):
    code, out, _ = run_cli(
        capsys, ["theta", "--tau", "i", "--char", "0|0", "--tolerance", "1e-13"]
    )
    data = json.loads(out)
    assert abs(data["value"][0] - 1.0864348112133080) < 1e-12
    assert data["truncation_bound"] < 1e-13
    code, out, _ = run_cli(
        capsys, ["theta", "--tau", "i", "--char", "1|1", "--grad"]
    )
    data = json.loads(out)
    assert abs(data["gradient"][0][0] + 2.8486946039877874) < 1e-10


def test_theta_jacobian_nullwert(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "theta",
            "--tau", "0.8+1.3i,0.3+0.4i;0.3+0.4i,-0.2+1.1i",
            "--jacobian", "01|11,01|01",
        ],
    )
    assert code == 0
    data = json.loads(out)
    assert data["chars"] == ["01|11", "01|01"]
    re, im = data["jacobian_nullwert"]
    assert (re**2 + im**2) > 1e-6
    # even characteristic in the list is malformed input
    code, _, _ = run_cli(
        capsys, ["theta", "--tau", "i,0;0,i".replace("0", "0"), "--jacobian", "01|11,00|00"]
    )
    assert code == 2


def test_norms_all_subsets(capsys):
    code, out, _ = run_cli(
        capsys, ["norms", "--roots", "0,1,2,3,4", "--subset", "all"]
    )
    assert code == 0
    data = json.loads(out)
    assert len(data["norm_j"]) == 15
    assert all(v["value"] > 0 for v in data["norm_j"].values())


def test_norms_with_audit(capsys):
    code, out, _ = run_cli(
        capsys,
        ["norms", "--roots", "0,1,2,3,4", "--subset", "1,2", "--emit-audit"],
    )
    assert code == 0
    data = json.loads(out)
    assert "components" in data["norm_phi"]
    assert data["norm_phi"]["audit_defect"] < 1e-12
    assert "1,2" in data["norm_j"]


def test_norms_green(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "norms", "--roots", "0,1,2,3,4",
            "--green-p", "1.3+0.9i@0", "--green-q", "2.6-1.1i@1",
        ],
    )
    assert code == 0
    data = json.loads(out)
    assert data["green_prime"] > 0


def test_byte_identical_output(capsys):
    argv = ["verify", "--identity", "rosenhain", "--roots", "0,1,2,3,4"]
    _, out1, _ = run_cli(capsys, argv)
    _, out2, _ = run_cli(capsys, argv)
    assert out1 == out2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run_cli(
        capsys, ["chars", "--genus", "1", "--output", str(target)]
    )
    assert code == 0
    assert out == ""
    data = json.loads(target.read_text())
    assert data["odd_count"] == 1


def test_config_file_supplies_flags(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"genus": 2, "list_f": True}))
    code, out, _ = run_cli(capsys, ["chars", "--config", str(cfg)])
    assert code == 0
    assert json.loads(out)["system_count"] == 15


def test_cli_flag_overrides_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"genus": 1}))
    code, out, _ = run_cli(capsys, ["chars", "--genus", "2", "--config", str(cfg)])
    assert json.loads(out)["odd_count"] == 6


def test_precision_env_default(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HYPERTHETA_PRECISION", "extended")
    code, out, _ = run_cli(
        capsys, ["theta", "--tau", "i", "--char", "0|0"]
    )
    assert code == 0
    data = json.loads(out)
    assert abs(data["value"][0] - 1.0864348112133080) < 1e-12
    monkeypatch.setenv("HYPERTHETA_PRECISION", "bogus")
    code, _, err = run_cli(capsys, ["theta", "--tau", "i", "--char", "0|0"])
    assert code == 2


def test_verify_all_on_g2_curve(capsys):
    code, out, err = run_cli(
        capsys, ["verify", "--identity", "all", "--roots", "0,1,2,3,4"]
    )
    assert code == 0
    names = [json.loads(line)["identity"] for line in out.strip().splitlines()]
    assert set(names) == {
        "rosenhain", "guardia", "product", "vanishing",
        "fourthpower", "lockhart", "dictionary",
    }


def test_verify_tau_only_rejects_curve_checks(capsys):
    code, _, err = run_cli(
        capsys, ["verify", "--identity", "lockhart", "--tau", "i"]
    )
    assert code == 2
    assert "needs a curve" in err
