import json
import subprocess
import sys

import pytest

from aswitt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pair_schmid_example(capsys):
    code, out, _ = run(capsys, "pair", "--p", "2", "--n", "1", "(t^-1)", "1+t")
    assert code == 0 and out.strip() == "1 (mod 2)"


def test_pair_zero_class(capsys):
    code, out, _ = run(capsys, "pair", "--p", "2", "--n", "1", "(0)", "t")
    assert code == 0 and out.startswith("0 ")


def test_pair_witness_with_self_check(capsys):
    code, out, _ = run(capsys, "pair", "--p", "2", "--n", "2", "--witness", "--self-check",
                       "--format", "json", "(t^-3; t^-1)", "1+t+t^2")
    data = json.loads(out)
    assert code == 0 and data["value"] == 0
    assert set(data["self_check"].values()) == {0}


def test_pair_over_extension_field(capsys):
    code, out, _ = run(capsys, "pair", "--p", "2", "--e", "2", "--n", "1", "(g*t^-1)", "1+t")
    assert code == 0 and out.strip() == "1 (mod 2)"


def test_conductor_reduces_first(capsys):
    code, out, _ = run(capsys, "conductor", "--p", "2", "--n", "1", "--format", "json", "(t^-2)")
    data = json.loads(out)
    assert code == 0
    assert (data["reduced"], data["fil"], data["Fil"]) == ("(t^-1)", 2, 2)


def test_conductor_unramified_boundary(capsys):
    code, out, _ = run(capsys, "conductor", "--p", "2", "--n", "1", "--format", "json", "(1)")
    data = json.loads(out)
    assert code == 0
    assert (data["fil"], data["Fil"]) == (1, 0)
    assert data["status"].startswith("boundary")


def test_conductor_p3(capsys):
    code, out, _ = run(capsys, "conductor", "--p", "3", "--n", "1", "--format", "json", "(t^-1)")
    assert code == 0 and json.loads(out)["fil"] == 2


def test_reduce_prints_trail(capsys):
    code, out, _ = run(capsys, "reduce", "--p", "2", "--n", "1", "--format", "json", "(t^-2)")
    data = json.loads(out)
    assert code == 0 and data["reduced"] == "(t^-1)" and data["trail"] == "(t^-1)"


def test_unitgroup(capsys):
    code, out, _ = run(capsys, "unitgroup", "--p", "2", "--n", "2", "--m", "2", "--format", "json")
    assert code == 0 and json.loads(out)["order"] == 8


@pytest.mark.parametrize("argv", [
    ("verify", "filagree", "--p", "2", "--n", "1", "--poles", "4"),
    ("verify", "orders", "--p", "2", "--n", "2", "--mmax", "4"),
    ("verify", "witt", "--p", "3", "--n", "3", "--cases", "100"),
    ("verify", "witt", "--p", "2", "--e", "2", "--n", "2", "--cases", "50"),
    ("verify", "pairing", "--p", "2", "--n", "2", "--cases", "20"),
    ("verify", "orthogonality", "--p", "2", "--n", "1", "--mmax", "3"),
])
def test_verify_suites_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    assert ": pass" in out.splitlines()[0]


@pytest.mark.parametrize("argv", [
    ("pair", "--p", "2", "(t^-1+)", "t"),
    ("pair", "--p", "2", "--n", "2", "(t^-1)", "t"),
    ("pair", "--p", "4", "(t^-1)", "t"),
    ("pair", "--p", "2", "(t^-1)", "0"),
    ("unitgroup", "--p", "2", "--e", "2", "--m", "12"),
    ("verify", "orthogonality", "--p", "5", "--mmax", "3"),
    ("verify", "filagree", "--p", "2", "--poles", "9"),
    ("conductor", "--p", "2", "--n", "5", "(0;0;0;0;0)"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["pair"])
    assert info.value.code == 2


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "pair", "--p", "2", "(t^-1+)", "t")
    assert "position 6" in err


def test_json_output_is_byte_stable():
    argv = [sys.executable, "-m", "aswitt", "verify", "pairing", "--p", "3", "--n", "1",
            "--cases", "10", "--seed", "5", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["ok"] is True
