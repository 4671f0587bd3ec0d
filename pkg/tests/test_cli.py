import json
import subprocess
import sys

import pytest

from tforge.cli import dumps, main, run_command

T1 = "(1,2)(3,4), (1,5,7)(2,3)(4,6), (1,7,5,2,4,6,3)"
T555 = "(1,7,6,5,4), (1,3,2,6,7), (2,3,4,5,6)"


def run(*argv):
    report, code = run_command(list(argv))
    return report, code


def test_genus():
    report, code = run("genus", "--order", "2520", "--signature", "2,6,7")
    assert code == 0
    assert report["results"]["genus"] == "241"
    assert report["command"] == "genus"
    assert report["schema"] == 1
    assert report["inputs"]["signature"] == [2, 6, 7]


def test_unknown_subcommand_exits_2(capsys):
    _, code = run("nosuchcmd")
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_missing_argument_exits_2():
    assert run("genus", "--order", "60")[1] == 2


def test_domain_error_exits_1(capsys):
    report, code = run("genus", "--order", "7", "--signature", "2,3,7")
    assert code == 1
    assert "error" in report["results"]
    assert "divide" in capsys.readouterr().err


def test_dessins_classify():
    report, code = run("dessins", "classify", "--n", "7", "--mu", "2,2,1,1,1", "--nu", "3,2,2")
    assert code == 0
    res = report["results"]
    assert res["class_count"] == 2
    assert all(c["group_order"] == "2520" and c["is_real"] for c in res["classes"])
    assert all(c["closure_genus"] == "241" for c in res["classes"])


def test_dessins_closure():
    report, _ = run("dessins", "closure", "--n", "7", "--triple", T1)
    assert report["results"]["component_count"] == "2"
    assert report["results"]["genus"] == "241"


def test_curves_iso():
    report, code = run("curves", "iso", "--genus", "6", "--a", "23", "--b", "23")
    assert code == 0
    assert report["results"]["isomorphic"] is True
    assert "[[1, -11], [0, -1]]" in report["results"]["equivalences"]
    report, _ = run("curves", "iso", "--genus", "6", "--a", "7/3", "--b", "8/3")
    assert report["results"]["isomorphic"] is False
    report, _ = run("curves", "iso", "--genus", "4", "--a", "15", "--b", "15")
    assert report["results"]["isomorphic"] is None


def test_belyi_exponents_are_strings():
    report, code = run("belyi", "--genus", "3", "--minpoly=-2,0,1")
    assert code == 0
    fm = report["results"]["factored_map"]
    assert all(isinstance(m, str) for m in fm["exponents"])
    assert set(report["results"]["verified_critical_values"]) <= {"0", "1", "inf"}
    assert run("belyi", "--genus", "3", "--a", "0")[1] == 1
    assert run("belyi", "--genus", "3")[1] == 1


def test_perm_commands():
    report, _ = run("perm", "spherical", "--group", "A7", "--signature", "5,5,5")
    assert report["results"]["count"] == 2
    report, _ = run("perm", "hurwitz", "--group", "A5", "--signature", "2,3,5")
    assert report["results"]["class_count"] >= 1
    report, _ = run("perm", "conj", "--t1", "(1,2)", "--t2", "(3,4)")
    assert report["results"]["conjugate"] is True


def test_beauville_commands():
    report, code = run("beauville", "check", "--group", "A7", "--t1", T1, "--t2", T555)
    assert code == 0
    assert report["results"]["is_beauville"] is True
    assert report["results"]["invariants"]["K2"] == 384
    report, _ = run("beauville", "search", "--group", "A5")
    assert report["results"]["count"] == 0


def test_pi1_small_group(tmp_path):
    out = tmp_path / "rel.txt"
    report, code = run("pi1", "--group", "S3", "--t1", "(1,2), (2,3)", "--t2", "(2,3), (1,2)",
                       "--emit", "presentation", "--matrix-out", str(out))
    assert code == 0
    res = report["results"]
    assert res["cosets"] == 6 and res["generators"] == 19
    assert res["presentation"]["generators"] == 19
    header = out.read_text().splitlines()[0].split()
    assert int(header[1]) == 19


def test_twocrit_deterministic_and_roundtrip():
    argv = ["--no-timings", "twocrit", "solve", "--n", "3", "--mu", "2,1", "--nu", "2,1",
            "--attempts", "32", "--seed", "5"]
    r1, _ = run(*argv)
    r2, _ = run(*argv)
    assert dumps(r1) == dumps(r2)
    assert json.loads(dumps(r1)) == r1
    assert "timings" not in r1
    assert r1["results"]["real_quotient_count"] == 1


def test_reproduce_skip_snf():
    report, code = run("reproduce-paper", "--skip-snf")
    assert code == 0
    items = {i["name"]: i["status"] for i in report["results"]["items"]}
    assert items.pop("abelianization") == "skipped"
    assert set(items.values()) == {"pass"}


def test_reproduce_corrupted_triple(capsys):
    report, code = run("reproduce-paper", "--skip-snf",
                       "--triple1", "(1,2)(3,5), (1,5,7)(2,3)(4,6)")
    assert code == 1
    assert "triple_verification" in report["results"]["failed"]
    assert "triple_verification" in capsys.readouterr().err


def test_main_prints_json(capsys):
    assert main(["genus", "--order", "168", "--signature", "2,3,7"]) == 0
    assert json.loads(capsys.readouterr().out)["results"]["genus"] == "3"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tforge", "genus", "--order", "2520",
                           "--signature", "5,5,5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["genus"] == "505"
