from __future__ import annotations

import json
import subprocess
import sys

import pytest

from autgrowth import cli
from autgrowth.thompson import VEXAMPLE


def run(tmp_path, capsys, *argv):
    code = cli.run(["--out", str(tmp_path), *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(tmp_path, group, command):
    return json.loads((tmp_path / f"{group}_{command}.json").read_text())


def test_growth_zr(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, "growth", "zr", "--rank", "2", "--max-n", "10")
    assert code == 0 and "alpha_Z^2" in out
    assert report(tmp_path, "growth", "zr")["result"]["counts"] == list(range(1, 12))
    assert (tmp_path / "growth_zr_alpha.csv").read_text().startswith("n,count,kind,cumulative")


@pytest.mark.parametrize("argv", [
    ["growth", "heisenberg", "--max-n", "8"],
    ["growth", "klein", "--max-n", "10"],
    ["growth", "construction", "--rank", "2", "--max-n", "6"],
    ["growth", "product", "--rank", "1", "--max-n", "12"],
    ["whitehead", "equal", "aaabbb", "bbbaaa"],
    ["whitehead", "count-family", "--m", "12"],
    ["thompson", "compose", "y0", "y1"],
    ["thompson", "revealing", "vexample"],
    ["thompson", "decorations", "vexample"],
    ["thompson", "decmap", "vexample"],
    ["thompson", "distinguish", "y0", "y1"],
    ["transducer", "eval", "pair:y0", "0110"],
    ["transducer", "product", "pair:y0", "pair:y1"],
    ["transducer", "minimize", "pair:vexample"],
    ["transducer", "sync", "pair:y0"],
    ["transducer", "conjugate", "y0", "pair:y1", "pair:00 -> 11; 01 -> 0; 1 -> 10"],
    ["va", "lambda", "inversion"],
    ["va", "certify", "inversion"],
])
def test_every_command_succeeds(tmp_path, capsys, argv):
    code, out, _ = run(tmp_path, capsys, *argv)
    assert code == 0 and "artifacts:" in out
    rep = report(tmp_path, argv[0], argv[1])
    assert rep["command"] == f"{argv[0]} {argv[1]}" and "result" in rep


def test_whitehead_minimize(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, "whitehead", "minimize", "ab")
    assert code == 0
    assert report(tmp_path, "whitehead", "minimize")["result"]["length"] == 1


def test_t_invariant_output(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, "thompson", "t-invariant", "0110")
    assert code == 0 and out.splitlines()[0] == "cyclic(0110)"
    assert report(tmp_path, "thompson", "t-invariant")["result"]["canonical"] == "0011"


def test_classify(tmp_path, capsys):
    assert run(tmp_path, capsys, "va", "classify", "klein")[1].startswith("quadratic")
    assert run(tmp_path, capsys, "va", "classify", "inversion")[1].startswith("linear")


def test_pair_file_argument(tmp_path, capsys):
    f = tmp_path / "v.txt"
    f.write_text(VEXAMPLE.to_text())
    code, out, _ = run(tmp_path, capsys, "thompson", "compose", str(f), "identity")
    assert code == 0 and out.startswith("0 -> 0")


def test_prime_command(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, "thompson", "prime", "identity")
    assert code == 0
    assert report(tmp_path, "thompson", "prime")["result"]["orbit_sizes"] == [1, 2, 3, 5, 7, 11]


def test_random_distinguish_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert cli.run(["--out", str(d), "--seed", "5", "thompson", "distinguish", "--random", "6"]) == 0
    capsys.readouterr()
    name = "thompson_distinguish.json"
    assert (a / name).read_bytes() == (b / name).read_bytes()
    assert json.loads((a / name).read_text())["result"]["undistinguished_pairs"] == []


def test_usage_errors(tmp_path, capsys):
    assert run(tmp_path, capsys, "whitehead", "minimize", "a1")[0] == 2
    assert run(tmp_path, capsys, "thompson", "compose", "0 -> 1", "y0")[0] == 2
    assert run(tmp_path, capsys, "thompson", "distinguish")[0] == 2
    assert run(tmp_path, capsys, "va", "certify", "klein")[0] == 2
    assert run(tmp_path, capsys, "growth", "nope")[0] == 2
    assert run(tmp_path, capsys, "transducer", "sync", "states 1")[0] == 2


def test_budget_exit_code(tmp_path, capsys):
    code, _, err = run(tmp_path, capsys, "whitehead", "equal", "aaaaaabbbbbb", "ab", "--budget", "4")
    assert code == 3 and "budget" in err


def test_assertion_exit_code(tmp_path, capsys, monkeypatch):
    def broken(*a, **k):
        raise AssertionError("forced")
    monkeypatch.setattr(cli.free_abelian, "alpha_zr", broken)
    assert run(tmp_path, capsys, "growth", "zr")[0] == 4


def test_output_directory_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AUTGROWTH_OUT", str(tmp_path / "env"))
    assert cli.run(["growth", "zr", "--max-n", "3"]) == 0
    assert (tmp_path / "env" / "growth_zr.json").exists()


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "autgrowth.cli", "--out", str(tmp_path),
                           "va", "classify", "trivial"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("linear")


@pytest.mark.parametrize("argv", [
    ["growth", "heisenberg", "--max-n", "8"],
    ["thompson", "decorations", "vexample"],
    ["whitehead", "count-family", "--m", "12", "--mode", "orbit"],
])
def test_same_config_gives_identical_artifacts(tmp_path, capsys, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert cli.run(["--out", str(d), "--seed", "3", *argv]) == 0
    capsys.readouterr()
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir()) and names
    assert all((a / n).read_bytes() == (b / n).read_bytes() for n in names)
