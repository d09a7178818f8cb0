import json

import pytest

from quhadamard import tables
from quhadamard.cli import run


def _json(capsys, argv):
    code = run(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_verify_pair_json(capsys):
    code, rec = _json(capsys, ["verify", "pair", "H12", "K12"])
    assert code == 0
    assert rec == {"kind": "QuasiUnbiased", "l": 9, "a": 16}


def test_verify_pair_text_and_json_agree(capsys):
    run(["verify", "pair", "H12", "K12"])
    text = capsys.readouterr().out
    assert text.strip() == "QuasiUnbiased l=9 a=16"


def test_table2_byte_identical(capsys):
    assert run(["table", "2"]) == 0
    assert capsys.readouterr().out == tables.golden("2")


@pytest.mark.parametrize("which", ["1", "8", "9", "weakIIUB"])
def test_tables_render(capsys, which):
    assert run(["table", which]) == 0
    assert capsys.readouterr().out == tables.render(which)


def test_params_weak_28(capsys):
    code, rec = _json(capsys, ["params", "weak", "28"])
    assert code == 0
    assert [(r["a"], r["b"], r["n_a"]) for r in rec["rows"]] == [(2, 6, 7), (2, 10, 21), (2, 26, 27)]
    assert all(r["existence"] is None for r in rec["rows"])


def test_params_qub_marks_ruled_out(capsys):
    run(["params", "qub", "12"])
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("12 (4,36) -") and out[1] == "12 (9,16) open"


def test_bounds(capsys):
    code, rec = _json(capsys, ["bounds", "qub", "32", "8"])
    assert (rec["absolute"], rec["lp"]) == (155, None)
    code, rec = _json(capsys, ["bounds", "weakII", "48", "4", "12"])
    assert (rec["absolute"], rec["lp"]) == (36034, 388)


def test_bad_arguments_exit_2(capsys):
    assert run(["params", "qub", "10"]) == 2
    assert run(["bounds", "qub", "16"]) == 2
    assert run(["nonsense"]) == 2
    assert run(["bounds", "weakII", "24", "4"]) == 2


def test_missing_external_data(capsys, monkeypatch):
    monkeypatch.delenv("HADAMARD_DATA", raising=False)
    assert run(["verify", "pair", "had.24.1", "K24_1"]) == 2
    assert "external data absent" in capsys.readouterr().err


def test_failed_verification_exit_1(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("++++\n++++\n++++\n++++\n")
    assert run(["verify", "pair", "H12", str(p)]) == 1


def test_budget_exhaustion_exit_3(capsys):
    assert run(["clique", "H12", "--sigma", "2,6", "--budget", "5"]) == 3


def test_search_qub_mate(capsys):
    code, rec = _json(capsys, ["search", "mate", "H12", "--qub", "9,16"])
    assert code == 0 and rec["pair"] == {"kind": "QuasiUnbiased", "l": 9, "a": 16}


def test_search_needs_one_target(capsys):
    assert run(["search", "mate", "H12"]) == 2


def test_classify_binary(capsys):
    code, rec = _json(capsys, ["classify", "binary", "--seed", "rm13", "--condition", "F2"])
    assert code == 0
    assert rec["counts"] == {"2": 1, "3": 1, "4": 2, "5": 1, "6": 1, "7": 1, "8": 1, "9": 0}


def test_classify_z4_weakII(capsys):
    code, rec = _json(capsys, ["classify", "z4", "--m", "4", "--condition", "weakII"])
    assert rec["counts"] == {"7": 1, "8": 3, "9": 0}


def test_fixtures_verify(capsys):
    assert run(["fixtures", "verify"]) == 0
    assert capsys.readouterr().out.strip().endswith("70/70 fixtures verified")


def test_scheme_check(capsys):
    assert run(["scheme", "check", "C(H8)"]) == 0
    assert run(["scheme", "check", "rm13"]) == 0


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "q.cfg"
    cfg.write_text("# budgets\nbudget = 5\nthreads = 1\n")
    assert run(["clique", "H12", "--sigma", "2,6", "--config", str(cfg)]) == 3


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "q.cfg"
    cfg.write_text("budget\n")
    assert run(["table", "1", "--config", str(cfg)]) == 2


def test_progress_goes_to_stderr(capsys):
    assert run(["classify", "binary", "--seed", "rm13", "--condition", "weak"]) == 0
    cap = capsys.readouterr()
    assert cap.out.strip() == "level 2: 1"
    assert "admissible translates" in cap.err


def test_verify_fixtures_alias(capsys):
    assert run(["verify", "fixtures"]) == 0
