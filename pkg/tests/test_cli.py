import json
import subprocess
import sys

import pytest

from argus import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_usage_errors_exit_3(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        cli.main(["check"])
    assert exc.value.code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--state-bound", "0", "x.gcl"])
    assert exc.value.code == cli.EXIT_USAGE
    other = tmp_path / "notes.txt"
    other.write_text("")
    code, _, err = _run(capsys, "check", str(other))
    assert code == cli.EXIT_USAGE and "expected a .ial or .gcl file" in err


def test_missing_file_is_E000(capsys, tmp_path):
    code, _, err = _run(capsys, "check", str(tmp_path / "absent.ial"))
    assert code == cli.EXIT_ERRORS and "E000" in err


def test_check_clean_and_broken(capsys, corpus):
    code, _, err = _run(capsys, "check", str(corpus / "tis_sfrs.ial"), str(corpus / "tokeneer_mini.gcl"))
    assert code == cli.EXIT_OK and err == ""
    code, _, err = _run(capsys, "check", str(corpus / "validator_errors" / "missing_elements.ial"))
    assert code == cli.EXIT_ERRORS and "E101" in err


def test_check_json(capsys, corpus):
    code, out, _ = _run(capsys, "check", "--format", "json", str(corpus / "validator_errors" / "cascading_errors.ial"))
    assert code == cli.EXIT_ERRORS
    diags = json.loads(out)["diagnostics"]
    assert {d["code"] for d in diags} == {"E101", "E301"}
    assert all(d["causedBy"] == "Rel_A" for d in diags if d["code"] == "E301")


def test_formal_refs_checked_only_with_models(capsys, corpus, tmp_path):
    ial = tmp_path / "a.ial"
    ial.write_text('module A\nArtifact X """@{Obligation nothing_here}"""\n')
    assert _run(capsys, "check", str(ial))[0] == cli.EXIT_OK
    code, _, err = _run(capsys, "check", str(ial), str(corpus / "laws.gcl"))
    assert code == cli.EXIT_ERRORS and "no obligation named nothing_here" in err


def test_verify_laws_json(capsys, corpus):
    code, out, _ = _run(capsys, "verify", "--format", "json", str(corpus / "laws.gcl"))
    assert code == cli.EXIT_OK
    data = json.loads(out)
    assert data["summary"] == {"pass": 15, "fail": 0, "error": 0}


def test_verify_failure_exits_2(capsys, tmp_path):
    gcl = tmp_path / "f.gcl"
    gcl.write_text("gclmodule F { state { x : bool; } obligation o : valid x }")
    code, out, _ = _run(capsys, "verify", "--color", "never", str(gcl))
    assert code == cli.EXIT_FAILED
    assert "o           Fail" in out and "counterexample: {x: false}" in out


def test_verify_state_bound_gives_error(capsys, tmp_path):
    gcl = tmp_path / "b.gcl"
    gcl.write_text("gclmodule B { state { x : int[0..7]; } obligation o : equiv (x := 1) (x := 2) }")
    code, out, _ = _run(capsys, "verify", "--state-bound", "4", str(gcl))
    assert code == cli.EXIT_FAILED and "Error" in out and "exceeds bound 4" in out


def test_color_always_paints(capsys, tmp_path):
    gcl = tmp_path / "c.gcl"
    gcl.write_text("gclmodule C { state { x : bool; } obligation o : valid true }")
    code, out, _ = _run(capsys, "verify", "--color", "always", str(gcl))
    assert code == cli.EXIT_OK and "\033[32mPass" in out


def test_status_of_sfr1_argument(capsys, corpus):
    code, out, _ = _run(capsys, "status", "--format", "json", str(corpus / "tis_sfrs.ial"),
                        str(corpus / "tokeneer_mini.gcl"))
    assert code == cli.EXIT_OK
    status = {c["gid"]: c["status"] for c in json.loads(out)["claims"]}
    assert status["FSFR1_Verified"] == "Supported" and status["TISOp_Correct"] == "Cited"


def test_status_reports_unsupported_claims(capsys, corpus):
    code, out, _ = _run(capsys, "status", str(corpus / "gsn_example.ial"))
    assert code == cli.EXIT_FAILED
    assert "C4  NeedsSupport" in out


def test_render_to_file_and_unwritable_path(capsys, corpus, tmp_path):
    target = tmp_path / "g.dot"
    code, out, _ = _run(capsys, "render", "--out", str(target), str(corpus / "gsn_example.ial"))
    assert code == cli.EXIT_OK and out == ""
    assert target.read_text().startswith('digraph "GSN_Example"')
    code, _, err = _run(capsys, "render", "--out", str(tmp_path / "no" / "such" / "dir" / "g.dot"),
                        str(corpus / "gsn_example.ial"))
    assert code == cli.EXIT_ERRORS and "cannot write" in err


def test_render_json(capsys, corpus):
    code, out, _ = _run(capsys, "render", "--format", "json", str(corpus / "gsn_example.ial"))
    assert code == cli.EXIT_OK and json.loads(out)["name"] == "GSN_Example"


def test_module_entry_point(corpus):
    proc = subprocess.run([sys.executable, "-m", "argus", "check", str(corpus / "laws.gcl")],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
