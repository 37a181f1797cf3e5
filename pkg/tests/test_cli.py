import io
import json
import subprocess
import sys

from gacable import cli, dim5, verify
from gacable.exact_poly import from_json_obj


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_sigma_text():
    code, out = run("sigma", "--n", "1")
    assert code == 0
    assert out.splitlines() == ["sigma_0 = a", "sigma_1 = a*v - x"]


def test_sigma_json_round_trip():
    code, out = run("sigma", "--n", "3", "--format", "json", "--invariants")
    assert code == 0
    items = json.loads(out)
    assert [i["name"] for i in items] == ["sigma_0", "sigma_1", "sigma_2", "sigma_3", "F", "G", "h"]
    ctx = dim5.make()
    assert from_json_obj(items[3]["poly"]) == ctx.sigma(3)
    assert from_json_obj(items[-1]["poly"]) == ctx.h


def test_sigma_verify(tmp_path):
    rep = tmp_path / "r.json"
    code, out = run("--report-file", str(rep), "sigma", "--n", "12", "--verify")
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["ok"] and all(c["ok"] for c in data["checks"])
    assert "PASS" in out and "FAIL" not in out


def test_corrupted_sigma_cache_is_caught(monkeypatch, tmp_path):
    real = dim5.make

    def corrupted():
        ctx = real()
        ctx.sigmas(8)
        ctx._sigma[7] = ctx._sigma[7] + ctx.x
        return ctx

    monkeypatch.setattr(dim5, "make", corrupted)
    rep = tmp_path / "r.json"
    code, out = run("--report-file", str(rep), "sigma", "--n", "8", "--verify")
    assert code == 1
    failed = [c["name"] for c in json.loads(rep.read_text())["checks"] if not c["ok"]]
    assert any("d/dv sigma_n" in name for name in failed)
    assert "FAIL  d/dv sigma_n" in out


def test_dims():
    code, out = run("dims", "--n-max", "13")
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    assert code == 0
    assert rows[0] == ["0", "1", "1"]
    assert rows[6] == ["6", "2", "2"]
    assert rows[13] == ["13", "3", "3"]


def test_omega_commands():
    code, out = run("omega", "basis", "--kind", "small", "--n", "2", "--j", "5")
    assert (code, out) == (0, "7*x0*x7 - x1*x6\n")
    code, out = run("omega", "reduce", "--n", "4", "--len", "4")
    lines = out.splitlines()
    assert code == 0
    assert lines[2] == "psi_4^(2) = 7*x0*x6 - 2*x1*x5 - x2*x4 + x3^2"
    assert lines[3] == "psi_4^(3) = 7*x0*x7 - 2*x2*x5 + x3*x4"
    assert run("omega", "qdim", "--q", "2", "--r", "3", "--s", "6") == (0, "1\n")
    code, out = run("omega", "vn", "--n", "8")
    assert code == 0 and len(out.splitlines()) == 2


def test_roberts_commands():
    code, out = run("roberts", "p", "--n", "0")
    assert (code, out) == (0, "P_0 = X\n")
    code, out = run("roberts", "orbit")
    assert code == 0 and out.count("[D kills: yes]") == 3
    code, out = run("roberts", "verify")
    assert code == 0 and "FAIL" not in out


def test_usage_errors(capsys):
    assert run("sigma")[0] == 2
    assert run("sigma", "--n", "-1")[0] == 2
    assert run("bogus")[0] == 2
    assert run("omega", "basis", "--n", "3", "--j", "0")[0] == 2
    assert run("--max-index", "4", "omega", "basis", "--n", "2", "--j", "5")[0] == 2


def test_help_exits_cleanly(capsys):
    assert run("--help")[0] == 0


def test_output_is_deterministic():
    argv = ["omega", "reduce", "--n", "10", "--len", "5"]
    assert run(*argv) == run(*argv)
    a = subprocess.run([sys.executable, "-m", "gacable", *argv], capture_output=True, text=True, check=True)
    b = subprocess.run([sys.executable, "-m", "gacable", *argv], capture_output=True, text=True, check=True)
    assert a.stdout == b.stdout == run(*argv)[1]


def test_report_renderings_agree():
    rep = verify.RunReport("demo")
    rep.add("first", True)
    rep.add("second", False, "x != y")
    data = json.loads(rep.to_json())
    text = rep.to_text(timing=False).splitlines()
    assert not data["ok"]
    assert [c["name"] for c in data["checks"]] == ["first", "second"]
    assert text[1] == "PASS  first" and text[2] == "FAIL  second  [x != y]"
    assert text[-1] == "1/2 checks passed"


def test_verify_all_quick(tmp_path):
    rep = tmp_path / "all.json"
    code, out = run("--report-file", str(rep), "verify-all", "--profile", "quick")
    data = json.loads(rep.read_text())
    assert code == 0 and data["ok"]
    assert len(data["checks"]) > 50
