import json
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from cli_cases import CASES
from oracles import naive_mld, naive_values
from mld_lab.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    argv, expected_code = CASES[name]
    code, out = run(argv, capsys)
    assert code == expected_code
    assert out == (GOLDEN / f"{name}.out").read_text()


def test_golden_values_agree_with_oracle():
    a1 = json.loads((GOLDEN / "mld_a1.out").read_text())
    assert F(a1["value"]) == naive_mld((1, 0), (1, 2), 0, 0)[0]
    kth = json.loads((GOLDEN / "mld_oracle_kth.out").read_text())["kth"]
    assert [F(v) for v in kth] == naive_values((3, -1), (0, 1), F(1, 3), 0, 40)[:4]


@pytest.mark.parametrize("name", [n for n, (argv, code) in CASES.items() if code == 0 and "--format" not in argv])
def test_round_trip(name, tmp_path, capsys):
    argv, _ = CASES[name]
    out = (GOLDEN / f"{name}.out").read_text()
    saved = tmp_path / "prev.json"
    saved.write_text(out)
    flags = [a for a in argv[1:] if a.startswith("--") and a not in {
        "--v1", "--v2", "--b1", "--b2", "--shape", "--weights", "--c1", "--cr", "--beta1", "--beta-r",
        "--left-coupling", "--right-coupling", "--N"}]
    flag_args = []
    for f in flags:
        flag_args.append(f)
        i = argv.index(f)
        if f == "--kth":
            flag_args.append(argv[i + 1])
    code, again = run([argv[0], "--input", str(saved), *flag_args], capsys)
    assert code == 0
    assert again == out


def test_error_json_names_field(capsys):
    code, out = run(["mld", "--v1", "1,0", "--v2", "1,2", "--b2", "2/0"], capsys)
    assert code == 2 and json.loads(out)["field"] == "b2"
    code, out = run(["mld", "--v1", "1,x", "--v2", "1,2"], capsys)
    assert code == 2 and json.loads(out)["field"] == "v1"
    code, out = run(["mld", "--v1", "1,0", "--v2", "1,2", "--b1", "0.5"], capsys)
    assert code == 2 and json.loads(out)["field"] == "b1"


def test_input_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    code, out = run(["mld", "--input", str(bad)], capsys)
    assert code == 2 and json.loads(out)["field"] == "input"
    bad.write_text('{"shape": "circle", "weights": [2, "x"], "c1": "0"}')
    code, out = run(["solve", "--input", str(bad)], capsys)
    assert code == 2 and json.loads(out)["field"] == "weights[1]"
    code, out = run(["mld", "--input", str(tmp_path / "missing.json")], capsys)
    assert code == 2


def test_output_path(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out = run(["resolve", "--v1", "1,0", "--v2", "1,3", "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "resolve_a2.out").read_text()


def test_scan_writes_reports(tmp_path, capsys):
    base = tmp_path / "scan"
    code, out = run(["scan", "--family", "0", "--N", "2", "--schedule", "10,20", "--thresholds", "1/4",
                     "--output", str(base)], capsys)
    assert code == 0
    assert "NOT stabilized" in out and out.count("\n") == 1
    report = json.loads(base.with_suffix(".json").read_text())
    assert report["counts_above"] == {"1/4": [4, 15]}
    header = base.with_suffix(".csv").read_text().splitlines()[0]
    assert header == "epsilon,schedule_index,max_index,count,stabilized"


def test_scan_system_mode(tmp_path, capsys):
    base = tmp_path / "sys"
    code, out = run(["scan", "--family", "0,1/2", "--mode", "system", "--shape", "circle", "--output", str(base)], capsys)
    assert code == 0 and out.startswith("system:circle")
    assert json.loads(base.with_suffix(".json").read_text())["mode"] == "system:circle"


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["mld", "--nope"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mld_lab", "resolve", "--v1", "1,0", "--v2", "1,2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "resolve_a1.out").read_text()
