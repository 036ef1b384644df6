import json
from pathlib import Path

from waldzeta.cli import main
from waldzeta.global_assembly import build_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_arch_zeta_vanishes(capsys):
    code, out, _ = run(capsys, "arch-zeta", "--ell", "4", "--D", "1", "--s", "0,0")
    assert code == 0
    assert json.loads(out)["value"] == [0.0, 0.0]


def test_arch_zeta_domain_error(capsys):
    code, out, err = run(capsys, "arch-zeta", "--ell", "2", "--D", "5", "--s=-1,0")
    assert code == 2 and json.loads(out)["violations"] and err


def test_waldspurger_spherical(capsys):
    code, out, _ = run(capsys, "waldspurger", "--config", str(CONFIGS / "unramified_inert.json"), "--max-m", "10")
    data = json.loads(out)
    assert code == 0 and data["kind"] == "spherical"
    assert len(data["A"]) == 11 and data["recurrence_agrees"]


def test_waldspurger_steinberg_table_format(capsys):
    code, out, _ = run(
        capsys, "waldspurger", "--config", str(CONFIGS / "steinberg_split_old.json"), "--max-m", "2", "--format", "table"
    )
    assert code == 0
    assert "DiagPowerW(2)" in out and "normalization" in out


def test_local_zeta(capsys):
    code, out, _ = run(capsys, "local-zeta", "--config", str(CONFIGS / "steinberg_ramified_new.json"), "--order", "20")
    data = json.loads(out)
    assert code == 0 and data["case"] == "newform" and data["oracle_agrees"]


def test_global(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(build_config(12, 6, 2).to_json()))
    code, out, _ = run(capsys, "global", "--config", str(path), "--s", "0,0")
    data = json.loads(out)
    assert code == 0
    assert data["violations"] == [] and set(data["y_table"]) == {"2", "3"}
    assert data["prime_bound"] == 20 and len(data["value"]) == 2


def test_global_invalid(capsys):
    code, out, _ = run(capsys, "global", "--config", str(CONFIGS / "global_D5_N6_fixture.json"))
    assert code == 2
    assert any("p=3" in v for v in json.loads(out)["violations"])


def test_malformed_json_reports_position(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"q": 3,\n  "legendre": }')
    code, out, _ = run(capsys, "local-zeta", "--config", str(path))
    assert code == 2
    assert "line 2 column" in json.loads(out)["error"]


def test_missing_file(capsys, tmp_path):
    code, out, _ = run(capsys, "local-zeta", "--config", str(tmp_path / "nope.json"))
    assert code == 2


def test_unknown_flag_rejected(capsys):
    code, _, err = run(capsys, "arch-zeta", "--ell", "4", "--D", "1", "--s", "0,0", "--bogus")
    assert code == 2 and "unrecognized" in err


def test_bad_complex_argument(capsys):
    code, _, _ = run(capsys, "arch-zeta", "--ell", "4", "--D", "1", "--s", "x")
    assert code == 2


def test_verify_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--seed", "42")
    code2, out2, _ = run(capsys, "verify", "--seed", "42")
    assert code1 == 0 and out1 == out2
    assert json.loads(out1)["passed"]
