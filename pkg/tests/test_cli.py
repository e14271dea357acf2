import json

import pytest

from superh2.cli import main
from superh2.kalgebra import algebra_to_document, builtin
from superh2.reproduce import recheck_report, run_suite


@pytest.mark.parametrize(
    "args,expected",
    [
        (["--builtin", "F2", "--m", "3", "--n", "1"], "even 0, odd 6"),
        (["--builtin", "Q", "--m", "2", "--n", "2"], "even 2, odd 0"),
        (["--builtin", "F2", "--m", "2", "--n", "1"], "even 0, odd 0"),
    ],
)
def test_hom2(capsys, args, expected):
    assert main(["hom2", *args]) == 0
    assert capsys.readouterr().out.strip() == expected


def test_catalog(capsys):
    assert main(["catalog"]) == 0
    rows = {line.split()[0]: line.split() for line in capsys.readouterr().out.splitlines()[1:]}
    assert rows["F2"][3:] == ["1", "1"]
    assert rows["Q"][3:] == ["0", "1"]
    assert rows["Weyl(F2)"][3:] == ["0", "0"]


def test_hom2_from_spec_file(tmp_path, capsys):
    path = tmp_path / "dual.json"
    path.write_text(json.dumps(algebra_to_document(builtin("F2[x]/(x^2)"))))
    out = tmp_path / "h2.json"
    assert main(["hom2", "--spec", str(path), "--m", "3", "--n", "1", "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "even 1, odd 12"
    assert json.loads(out.read_text())["odd"] == 12


def test_spec_parse_error_has_line_info(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"field": {"kind": "Fp", "p": 2},\n "dim": 1,,\n}')
    assert main(["hom2", "--spec", str(path), "--m", "2", "--n", "1"]) == 2
    assert "broken.json:2:" in capsys.readouterr().err


def test_nonassociative_spec_fails_before_cocycle_work(tmp_path, capsys):
    doc = {
        "field": {"kind": "Q"},
        "dim": 3,
        "basis": ["1", "x", "y"],
        "unit": ["1", "0", "0"],
        "mult": [
            [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
            [["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]],
            [["0", "0", "1"], ["0", "1", "0"], ["0", "0", "0"]],
        ],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert main(["cocycle-check", "--spec", str(path), "--case", "3,1"]) == 2
    err = capsys.readouterr().err
    assert "associativity fails at" in err


@pytest.mark.parametrize("name,case", [("F2[x]/(x^2)", "3,1"), ("Q", "2,2")])
def test_cocycle_check_passes(capsys, name, case):
    assert main(["cocycle-check", "--builtin", name, "--case", case]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "cocycle (super-axioms of the extension): pass" in out


def test_budget_exceeded_is_a_resource_error(capsys):
    assert main(["hom2", "--builtin", "M2(F2)", "--m", "2", "--n", "2", "--budget", "10"]) == 2
    assert "exceeds the size budget" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert main(["hom2", "--m", "2", "--n", "1"]) == 2
    assert main(["hom2", "--builtin", "nope", "--m", "2", "--n", "1"]) == 2
    assert main(["hom2", "--builtin", "F2", "--m", "1", "--n", "1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["cocycle-check", "--builtin", "F2", "--case", "2,1"])
    assert exc.value.code == 2


def test_reproduce_budget_skips(tmp_path):
    out = tmp_path / "r.json"
    assert main(["reproduce", "--algebras", "F3", "--budget", "10", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    skipped = [e for e in report["homology"] if "skipped" in e]
    assert skipped and all("budget 10" in e["skipped"] for e in skipped)
    assert recheck_report(report)


def test_reproduce_f3_only():
    report = run_suite(["F3", "F3[x]/(x^2)"])
    assert all(v == "pass" for v in report["verdicts"].values())
    assert [a["dim_R2"] for a in report["algebras"]] == [0, 0]
    assert "criterion 5 (graded H2 dimension identities): pass" in report["table"]


def test_report_verdicts_follow_the_numbers():
    report = run_suite(["F2"])
    assert recheck_report(report)
    tampered = json.loads(json.dumps(report))
    entry = next(e for e in tampered["homology"] if (e["m"], e["n"]) == (3, 1))
    entry["odd"] += 1
    assert not recheck_report(tampered)
