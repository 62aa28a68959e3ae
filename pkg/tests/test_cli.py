import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from mimicauto import specio
from mimicauto.cli import main

DATA = resources.files("mimicauto") / "data"
FIG4 = str(DATA / "fig4.ma")
CASE1 = str(DATA / "case1.ma")
BROKEN = str(DATA / "broken.ma")
HANDOFF = str(DATA / "handoff.ma")
GOLDEN = Path(__file__).parent / "golden" / "fig4.trace"
CHAIN_INPUT = "a1 a2 a4 | b1 b3 | c1 c4 | d1 d2 d3"


def test_run_accept(capsys):
    assert main(["run", FIG4, "--input", CHAIN_INPUT, "--budget", "1000"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "Accept"


def test_run_reject_and_budget(capsys):
    assert main(["run", CASE1, "--input", "a a b c c"]) == 1
    assert main(["run", CASE1, "--input", "a a b b c c", "--budget", "3"]) == 2
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "Reject" and "BudgetExhausted" in out


def test_trace_golden(capsys):
    assert main(["trace", FIG4, "--input", CHAIN_INPUT, "--budget", "1000", "--seed", "0"]) == 0
    assert capsys.readouterr().out == GOLDEN.read_text(encoding="utf-8")


def test_trace_to_file(tmp_path):
    out = tmp_path / "t.trace"
    assert main(["trace", FIG4, "--input", CHAIN_INPUT, "-o", str(out)]) == 0
    assert out.read_bytes() == GOLDEN.read_bytes()


def test_classify(capsys):
    assert main(["classify", CASE1]) == 0
    assert main(["classify", FIG4]) == 0
    assert capsys.readouterr().out.split() == ["Case1_TuringEquivalent", "Case4_FSAonRegularSchedule"]


def test_validate(capsys):
    assert main(["validate", FIG4]) == 0
    assert main(["validate", BROKEN]) == 65
    err = capsys.readouterr().err
    assert "broken.ma:5:16: error: duplicate state 'H1'" in err


def test_color_switch(capsys, monkeypatch):
    monkeypatch.setenv("MA_COLOR", "1")
    main(["validate", BROKEN])
    assert "\x1b[" in capsys.readouterr().err
    monkeypatch.setenv("MA_COLOR", "0")
    main(["validate", BROKEN])
    assert "\x1b[" not in capsys.readouterr().err


def test_flatten_writes_fsa_spec(tmp_path):
    out = tmp_path / "flat.ma"
    assert main(["flatten", FIG4, "-o", str(out)]) == 0
    ma = specio.load_file(out)
    (sa,) = ma.lower_automata()
    assert sa.kind.value == "fsa" and len(sa.states) == 16
    assert main(["flatten", CASE1]) == 65


def test_sample(capsys):
    assert main(["sample", FIG4, "--max-len", "6", "--alphabet", "a1,a3,b1,b3,c3,d4"]) == 0
    out = capsys.readouterr().out
    assert "accepted (1):\n  a1 a3 b1 b3 c3 d4\n" in out
    assert main(["sample", FIG4, "--max-len", "12"]) == 64


def test_export_dot(tmp_path):
    assert main(["export-dot", FIG4, "-o", str(tmp_path)]) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["ca_C1.dot", "ca_C2.dot", "overview.dot", "sa_SA1.dot", "sa_SA2.dot", "sa_SA3.dot",
                     "sa_SA4.dot", "upper_A_s.dot"]
    overview = (tmp_path / "overview.dot").read_text()
    assert overview.count("style=dashed") == 3 and 'label="ε"' in overview
    for p in tmp_path.iterdir():
        assert p.read_text().startswith("digraph ")


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["run", FIG4],
    ["run", FIG4, "--input", "a1", "--budget", "100"],
    ["run", HANDOFF, "--input", "a | b"],
    ["run", FIG4, "--input", CHAIN_INPUT, "--budget", "0"],
    ["validate", "/nonexistent.ma"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(main(argv))
    assert info.value.code == 64


def test_undeclared_input_symbol_is_data_error():
    assert main(["run", FIG4, "--input", "zz | b1 | c1 | d1"]) == 65


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "mimicauto", "classify", CASE1], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "Case1_TuringEquivalent"
