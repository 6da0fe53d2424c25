import json
import subprocess
import sys

import pytest

from umbral_tsh.cli import main
from umbral_tsh.poly import MPoly, T, X
from umbral_tsh.tsh import TSHPoly, tsh_polynomial
from umbral_tsh.umbra import builtin


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def moments_file(tmp_path):
    def make(*values, name="u.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"kind": "moments", "values": list(values)}), encoding="utf-8")
        return str(path)
    return make


def test_gen_brownian_table(capsys):
    code, out, _ = run(capsys, "gen", "--order", "3", "--builtin", "gauss-compound", "--format", "table")
    assert code == 0
    assert out.splitlines() == [
        "Q_0(x,t) = 1",
        "Q_1(x,t) = x",
        "Q_2(x,t) = x^2 - t",
        "Q_3(x,t) = x^3 - 3*x*t",
    ]


def test_gen_from_umbra_file(capsys, moments_file):
    code, out, _ = run(capsys, "gen", "--order", "1", "--umbra", moments_file("2"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    q1 = TSHPoly.from_json(data["polys"][1])
    assert q1.poly == X - 2 * T


def test_gen_order_zero(capsys):
    code, out, _ = run(capsys, "gen", "--order", "0", "--builtin", "bell")
    assert code == 0
    assert out.strip() == "Q_0(x,t) = 1"


def test_gen_latex(capsys):
    code, out, _ = run(capsys, "gen", "--order", "2", "--builtin", "brownian", "--format", "latex")
    assert code == 0
    assert "x^{2} - t" in out


def test_gen_is_deterministic(capsys):
    args = ("gen", "--order", "6", "--builtin", "compensated-poisson", "--format", "json")
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second


@pytest.mark.parametrize("args", [
    ("transform", "--from", "moments", "--to", "free", "--values", "1/2,3,-1,4", "--format", "json"),
    ("family", "charlier", "--order", "5", "--format", "json"),
    ("family", "free", "--order", "4", "--values", "0,1,0,1", "--format", "latex"),
])
def test_other_commands_are_deterministic(capsys, args):
    assert run(capsys, *args) == run(capsys, *args)


def test_gen_json_reparses_to_family(capsys):
    _, out, _ = run(capsys, "gen", "--order", "5", "--builtin", "bell", "--format", "json", "--sign", "plus")
    data = json.loads(out)
    bell = builtin("bell", 5)
    for k, entry in enumerate(data["polys"]):
        assert TSHPoly.from_json(entry) == tsh_polynomial(k, bell, "plus")


def test_gen_order_beyond_umbra(capsys, moments_file):
    code, _, err = run(capsys, "gen", "--order", "3", "--umbra", moments_file("1", "1"))
    assert code == 2
    assert "error" in err


def test_malformed_umbra_reports_position(capsys, moments_file):
    code, _, err = run(capsys, "gen", "--order", "1", "--umbra", moments_file("1", "x"))
    assert code == 2
    assert "$.values[1]" in err


def test_invalid_json_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\"kind\": ", encoding="utf-8")
    code, _, err = run(capsys, "gen", "--umbra", str(path))
    assert code == 2


def test_verify_all_bell_order_8(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--order", "8", "--builtin", "bell")
    assert code == 0
    assert "ALL PASS" in out


@pytest.mark.parametrize("name", ["bell", "unity", "brownian", "compensated-poisson"])
def test_verify_all_order_10(capsys, name):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--order", "10", "--builtin", name, "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert all(s["passed"] for s in report["suites"].values())


def test_verify_wald_order_zero(capsys):
    assert run(capsys, "verify", "--suite", "wald", "--order", "0", "--builtin", "bell")[0] == 0


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus", "--builtin", "bell"])
    assert exc.value.code == 2


def test_verify_corrupted_polys(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "--order", "3", "--builtin", "bell", "--format", "json")
    data = json.loads(out)
    data["polys"][2]["coeffs"]["x"] = {"t": "-5"}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--suite", "martingale", "--order", "3", "--builtin", "bell",
                       "--polys", str(path), "--format", "json")
    assert code == 1
    report = json.loads(out)
    failed = [c for c in report["suites"]["martingale"]["checks"] if not c["passed"]]
    assert [c["k"] for c in failed] == [2]
    assert not MPoly.from_json(failed[0]["residual"]).is_zero()


def test_verify_intact_polys_pass(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "--order", "4", "--builtin", "unity", "--format", "json")
    path = tmp_path / "good.json"
    path.write_text(out, encoding="utf-8")
    code, _, _ = run(capsys, "verify", "--suite", "all", "--order", "4", "--builtin", "unity", "--polys", str(path))
    assert code == 0


def test_transform_examples(capsys):
    assert run(capsys, "transform", "--from", "moments", "--to", "classical", "--values", "1,2,5,15")[1].strip() == "1,1,1,1"
    assert run(capsys, "transform", "--from", "free", "--to", "moments", "--values", "1,1,1,1")[1].strip() == "1,2,5,14"
    assert run(capsys, "transform", "--from", "boolean", "--to", "free", "--values", "1/2,-3,0,7")[0] == 0


@pytest.mark.parametrize("kind", ["moments", "classical", "boolean", "free"])
def test_transform_identity(capsys, kind):
    code, out, _ = run(capsys, "transform", "--from", kind, "--to", kind, "--values", "3/4,-2,0,5")
    assert code == 0
    assert out.strip() == "3/4,-2,0,5"


def test_transform_round_trip_through_cli(capsys):
    vals = "1/3,2,-1,4,0,1/7"
    for kind in ("classical", "boolean", "free"):
        fwd = run(capsys, "transform", "--from", "moments", "--to", kind, "--values", vals)[1].strip()
        back = run(capsys, "transform", "--from", kind, "--to", "moments", "--values", fwd)[1].strip()
        assert back == vals


def test_transform_rejects_non_rational(capsys):
    code, _, err = run(capsys, "transform", "--from", "free", "--to", "moments", "--values", "1,0.5")
    assert code == 2


def test_family_hermite(capsys):
    code, out, _ = run(capsys, "family", "hermite", "--order", "4")
    assert code == 0
    assert "x^4 - 6*x^2*t + 3*t^2" in out
    code, out, _ = run(capsys, "family", "hermite", "--order", "0")
    assert code == 0 and "= 1" in out


def test_family_charlier_relation(capsys):
    code, out, _ = run(capsys, "family", "charlier", "--order", "2")
    assert code == 0
    assert "c = (-1, 1)" in out
    assert "x^2 - x - t" in out


def test_family_boolean_and_free(capsys):
    code, out, _ = run(capsys, "family", "free", "--order", "2", "--values", "0,1")
    assert code == 0
    assert "x^2 - 2*t" in out
    code, out, _ = run(capsys, "family", "boolean", "--order", "1", "--values", "1")
    assert code == 0
    assert "x - t" in out


def test_family_levy_sheffer(capsys):
    code, out, _ = run(capsys, "family", "levy-sheffer", "--order", "2",
                       "--alpha-builtin", "unity", "--gamma-builtin", "unity")
    assert code == 0
    assert "x + t" in out


def test_family_levy_sheffer_needs_both(capsys):
    code, _, err = run(capsys, "family", "levy-sheffer", "--order", "2", "--alpha-builtin", "unity")
    assert code == 2
    assert "gamma" in err


def test_env_order(capsys, monkeypatch):
    monkeypatch.setenv("UMBRA_TSH_ORDER", "2")
    code, out, _ = run(capsys, "gen", "--builtin", "bell")
    assert code == 0
    assert len(out.splitlines()) == 3


def test_order_cap(capsys):
    code, _, err = run(capsys, "gen", "--builtin", "bell", "--order", "30")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "umbral_tsh", "gen", "--order", "1", "--builtin", "unity"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "Q_1(x,t) = x - t"
