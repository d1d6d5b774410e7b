import json
import re
import subprocess
import sys

import pytest

from crossmod.cli import main
from crossmod.io import load, to_twocrossed
from crossmod.actor import validate_2crossed
from conftest import CORPUS

XMOD_FILES = sorted(p.name for p in CORPUS.glob("*.xmod"))
TWO_FILES = sorted(p.name for p in CORPUS.glob("*.2xmod"))
NEGATIVE = sorted(p.name for p in (CORPUS / "negative").iterdir())
FAST = ["c2c2.xmod", "c3zero.xmod", "indisc2.xmod", "bundle2.xmod"]


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def expectations(path):
    head = path.read_text().splitlines()[:2]
    code = int(re.match(r"# expect-exit: (\d+)", head[0]).group(1))
    text = re.match(r"# expect: (.*)", head[1]).group(1)
    return code, text


@pytest.mark.parametrize("fname", NEGATIVE)
def test_negative_corpus_exit_codes(capsys, fname):
    path = CORPUS / "negative" / fname
    want, text = expectations(path)
    code, out, err = run(capsys, "check", path)
    assert code == want
    assert text in (out if code == 1 else err)


@pytest.mark.parametrize("fname", XMOD_FILES + TWO_FILES)
def test_check_accepts_corpus(capsys, fname):
    code, out, _ = run(capsys, "check", CORPUS / fname)
    assert code == 0
    assert "verdict" in out


@pytest.mark.parametrize("command", ["check", "fder", "aut", "actor", "braided", "roundtrip"])
@pytest.mark.parametrize("fname", FAST)
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_reports_are_deterministic(capsys, command, fname, fmt):
    first = run(capsys, command, CORPUS / fname, "--format", fmt)
    second = run(capsys, command, CORPUS / fname, "--format", fmt)
    assert first[0] == 0
    assert first == second
    if fmt == "json":
        json.loads(first[1])


def test_fder_invertible_table(capsys):
    code, out, _ = run(capsys, "fder", CORPUS / "c2c2.xmod", "--invertible", "--table", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["order"] == 2 and rep["set"] == "FDer*"
    assert rep["table"] == [[0, 1], [1, 0]]


def test_fder_counts_all(capsys):
    code, out, _ = run(capsys, "fder", CORPUS / "c2c2.xmod", "--format", "json")
    rep = json.loads(out)
    assert rep["order"] == 4
    assert sum(e["invertible"] for e in rep["elements"]) == 2


def test_aut_report(capsys):
    code, out, _ = run(capsys, "aut", CORPUS / "c3zero.xmod", "--format", "json")
    assert code == 0 and json.loads(out)["order"] == 2


def test_actor_emit(capsys, tmp_path):
    dest = tmp_path / "actor.2xmod"
    code, out, _ = run(capsys, "actor", CORPUS / "c3c2zero.xmod", "--emit", dest)
    assert code == 0 and dest.exists()
    assert validate_2crossed(to_twocrossed(load(dest))).ok
    code, out, _ = run(capsys, "check", dest)
    assert code == 0


def test_emit_to_bad_path(capsys, tmp_path):
    code, _, err = run(capsys, "actor", CORPUS / "c2c2.xmod", "--emit", tmp_path / "missing" / "x.2xmod")
    assert code == 2 and "cannot write" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "nope.xmod")
    assert code == 2 and err


def test_wrong_kind_for_command(capsys):
    code, _, err = run(capsys, "fder", CORPUS / "c3c3id.2xmod")
    assert code == 2 and "kind" in err


def test_invalid_input_to_fder(capsys):
    code, out, _ = run(capsys, "fder", CORPUS / "negative" / "cm1_fails.xmod")
    assert code == 1 and "CM1" in out


def test_roundtrip_2xmod(capsys):
    code, out, _ = run(capsys, "roundtrip", CORPUS / "s3s3id.2xmod", "--format", "json")
    assert code == 0
    assert json.loads(out)["witness"]["method"] == "canonical"


def test_roundtrip_invalid_2xmod(capsys):
    code, out, _ = run(capsys, "roundtrip", CORPUS / "negative" / "zero_lift.2xmod")
    assert code == 1 and "P1" in out


def test_search_cap_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("XMOD_MAX_SIZE", "10")
    code, _, err = run(capsys, "fder", CORPUS / "s3s3.xmod")
    assert code == 3 and "search space" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "crossmod", "check", str(CORPUS / "c2c2.xmod")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verdict: crossed" in proc.stdout
