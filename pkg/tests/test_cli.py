import json
import subprocess
import sys
from pathlib import Path

import pytest

from linkage.cli import Options, main, run_command, run_directive
from linkage.session import SessionError, parse_session, parse_session_text

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def load(name):
    return parse_session(CORPUS / f"{name}.session")


def test_session_parse():
    s = load("plane_pairs")
    assert s.ring.n == 5 and s.ring.p == 32003
    assert set(s.ideals) >= {"E2", "E3", "b23", "E3_mutant"}
    assert s.links["L23"].ideal == "E2" and s.links["L23"].gorenstein == "b23"
    assert ("check-s2", "L23") in s.directives


@pytest.mark.parametrize("text, line, column", [
    ("ideal I = x0\n", 1, 1),
    ("ring 101 3\nideal I = x0\nideal I = x1\n", 3, 7),
    ("ring 101 3\nideal I = x0\nlink L : I in b\n", 3, 15),
    ("ring 101 3\nideal I = x0, x9\n", 2, 15),
    ("ring 101 3\nfrobnicate\n", 2, 1),
    ("ring 101 3\nideal I = x0, \n", 2, 14),
])
def test_session_errors_carry_positions(text, line, column):
    with pytest.raises(SessionError) as info:
        parse_session_text(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_digest_tracks_content():
    a = parse_session_text("ring 101 2\nideal I = x0\n")
    b = parse_session_text("ring 101 2\nideal I = x1\n")
    assert a.digest != b.digest and len(a.digest) == 64


def test_resolve_twisted_cubic():
    report, code = run_command("resolve", ["I_tc"], load("twisted_cubic"))
    assert code == 0
    grid = report["data"]["betti"]
    betti = {(i, grid["lo"] + j): v for i, row in enumerate(grid["rows"]) for j, v in enumerate(row) if v}
    assert betti == {(0, 0): 1, (1, 2): 3, (2, 3): 2}


def test_link_outside_the_ideal_exits_one():
    report, code = run_command("link", ["I_tc", "b_bad"], load("twisted_cubic"))
    assert code == 1
    assert "NotContained" in report["checks"][0]["detail"]


def test_unknown_name_fails_cleanly():
    report, code = run_command("deficiency", ["nope"], load("twisted_cubic"))
    assert code == 1 and report["overall"] == "fail"


def test_narrow_window_is_inconclusive():
    report, code = run_command("check-duality", ["E2"], load("plane_pairs"), Options(window=(0, 1)))
    assert code == 2 and report["overall"] == "inconclusive"


def test_oracle_cross_check():
    report, code = run_command("deficiency", ["E2"], load("plane_pairs"), Options(oracle=True))
    assert code == 0
    assert any(c["check_id"].startswith("oracle") for c in report["checks"])


def test_directives_in_corpus():
    expected_red = {("check-duality", "E2", "--ell", "2"), ("check-duality", "E3", "--ell", "2"),
                    ("check-duality", "N"), ("check-duality", "N", "--ell", "2"),
                    ("link", "M_mixed", "b_mixed"), ("check-duality", "M_mixed", "--ell", "2")}
    for path in sorted(CORPUS.glob("*.session")):
        session = parse_session(path)
        for d in session.directives:
            _, code = run_directive(session, d)
            assert code == (1 if d in expected_red else 0), (path.name, d)


def test_output_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        target = tmp_path / f"r{k}.json"
        assert main(["check-surface", str(CORPUS / "plane_pairs.session"), "E2", "via", "b23",
                     "-o", str(target)]) == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["overall"] == "pass"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "linkage.cli", "link", str(CORPUS / "twisted_cubic.session"),
                           "L_tc"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["overall"] == "pass"


def test_missing_file_reports_error(capsys):
    assert main(["resolve", "/nonexistent.session", "I"]) == 1
    assert "linkage:" in capsys.readouterr().err
