import json

import pytest

import cli
from cli import EXIT_DEFECT, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main

V_MODEL = {
    "worlds": ["r", "a", "b"],
    "root": "r",
    "order": [["r", "a"], ["r", "b"]],
    "valuation": {"b": ["p"]},
}


def test_table_csv(capsys):
    assert main(["table", "--max-len", "1"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "word,c0,c1,m00,m01,m11,V,i0,i1,i01"
    assert out[1] == "p,-,+,-,-,+,-,-,+,-"
    assert out[3] == "!p,+,-,+,+,-,+,+,+,+"
    assert len(out) == 4


def test_table_markdown_uses_pretty_labels(capsys):
    assert main(["table", "--max-len", "1", "--format", "markdown"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "| word | ○ | ● | ○/○ |" in out
    assert "| ¬p |" in out


def test_table_length_is_limited(capsys):
    assert main(["table", "--max-len", "9"]) == EXIT_USAGE
    assert "between 0 and 8" in capsys.readouterr().err


def test_errata(capsys):
    assert main(["errata", "--format", "json"]) == EXIT_OK
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 7
    assert {r["word"] for r in records} == {"p", "!!!!!p"}


def test_census(capsys):
    assert main(["census", "--max-len", "5"]) == EXIT_OK
    classes = json.loads(capsys.readouterr().out)
    assert len(classes) == 15
    assert classes[-1]["representative"] == "!~~!!p"


def test_census_csv(capsys):
    assert main(["census", "--max-len", "1", "--format", "csv"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "representative,signature,member_count,irreducible_members"
    assert len(out) == 4


@pytest.mark.parametrize("word,normal", [("!~~!~p", "!~~!!p"), ("~!~!p", "~!p"), ("~~~~~p", "~p")])
def test_classify(capsys, word, normal):
    assert main(["classify", word, "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["normalized"] == report["normalized_semantic"] == normal


def test_classify_text(capsys):
    assert main(["classify", "!!!p"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "normalized: !p" in out
    assert "irreducible: False" in out


def test_eval(capsys, model_file):
    assert main(["eval", model_file(V_MODEL), "~~p"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["a:-", "b:+", "r:-", "invalid"]


def test_eval_json(capsys, model_file):
    assert main(["eval", model_file(V_MODEL), "p | !p", "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["valid"] is True
    assert report["formula"] == "p | !p"


def test_eval_rejects_defective_model(capsys, model_file):
    assert main(["eval", model_file({"worlds": ["a", "b"]}), "p"]) == EXIT_DEFECT
    assert "model defect: NoLeastRoot" in capsys.readouterr().err


def test_eval_missing_file(capsys, tmp_path):
    assert main(["eval", str(tmp_path / "absent.json"), "p"]) == EXIT_USAGE


def test_valid(capsys):
    assert main(["valid", "p | !p"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("valid: p | !p holds in all")
    assert main(["valid", "p | ~p"]) == EXIT_OK
    assert capsys.readouterr().out == "invalid: p | ~p is refuted at r\n"


def test_countermodel(capsys):
    assert main(["countermodel", "!!p -> p", "--max-worlds", "3", "--max-height", "2"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["world"] == "r"
    assert record["model"]["worlds"] == ["r", "w1"]
    assert record["model"]["valuation"] == {}


def test_no_countermodel(capsys):
    assert main(["countermodel", "~p -> !p"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "null"


def test_poset_dot(capsys):
    assert main(["poset", "--constants"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("digraph poset {")
    assert sum(" -> " in line for line in out.splitlines()) == 23


def test_poset_json(capsys):
    assert main(["poset", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert len(data["nodes"]) == 15 and len(data["covers"]) == 16


def test_output_file(capsys, tmp_path):
    target = tmp_path / "table.csv"
    assert main(["table", "--max-len", "0", "--output", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert target.read_text(encoding="utf-8").splitlines()[1] == "p,-,+,-,-,+,-,-,+,-"


def test_verify_quick(capsys):
    assert main(["verify", "--max-len", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.rstrip().endswith("suites passed")


def test_verify_failure_exit_code(monkeypatch):
    monkeypatch.setattr(cli, "run_verification", lambda opts: _FailedReport())
    assert main(["verify", "--max-len", "1"]) == EXIT_FAILURE


class _FailedReport:
    ok = False

    def summary(self):
        return "FAIL  broken\n"


@pytest.mark.parametrize("argv", [
    ["classify", "~q"],
    ["valid", "p &"],
    ["census", "--max-len", "-1"],
    ["table", "--format", "yaml"],
    ["frobnicate"],
    [],
    ["valid", "p", "--max-worlds", "0"],
    ["countermodel", "p", "--max-worlds", "7"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_parse_error_message(capsys):
    assert main(["valid", "p & & p"]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("parse error:")


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == EXIT_OK
    assert "census" in capsys.readouterr().out
