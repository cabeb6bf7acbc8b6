import json
from pathlib import Path

import pytest

from fullgroup import cli
from fullgroup.errors import InvariantError

GOLDEN = Path(__file__).parent / "golden"

# (golden file, argv)
CASES = [
    ("analyze_h.json", ["analyze", "g_[1]^2 g^-1"]),
    ("analyze_hhp.json", ["analyze", "g_[1]^2 g^-1 g_[0]^2 g^-1"]),
    ("analyze_mixed.json", ["analyze", "g^2", "--bases", "pre=[2]", "per=[3]"]),
    ("normal_form_f.json", ["normal-form", "g_[1] g^-1"]),
    ("reduce_word.json", ["reduce-word", "g^-1 g_[1]"]),
    ("positive_form_h.json", ["positive-form", "g_[1]^2 g^-1"]),
    ("conjugator_h.json", ["conjugator", "g_[1]^2 g^-1"]),
    ("pure_cycles_f.json", ["pure-cycles", "g_[1] g^-1"]),
    ("induce_h.json", ["induce", "g_[1]^2 g^-1", "--on", "[0]"]),
    ("index_g.json", ["index", "g"]),
    ("simulate_h.json", ["simulate", "g_[1]^2 g^-1", "--window", "200"]),
    ("weld_flip_report.json", ["weld", str(GOLDEN / "weld_flip.json")]),
]


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("golden, argv", CASES, ids=[c[0] for c in CASES])
def test_golden_output(golden, argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_analyze_example(capsys):
    _, out, _ = run(["analyze", "g_[1]^2 g^-1", "--bases", "per=[2]"], capsys)
    rep = json.loads(out)
    assert (rep["index"], rep["o_plus"], rep["o_minus"], rep["m"]) == (1, 1, 0, 1)
    assert rep["sign_partition"] == {"X_p": "{}", "X_plus": "X", "X_minus": "{}"}


def test_reduce_word_example(capsys):
    _, out, _ = run(["reduce-word", "g^-1 g_[1]"], capsys)
    assert json.loads(out)["reduced"] == "g_[0] g^-1"


def test_index_example(capsys):
    assert run(["index", "g"], capsys)[1] == "1\n"


def test_output_is_byte_stable(capsys):
    first = run(["analyze", "g_[0] g_[01]^-3"], capsys)[1]
    assert run(["analyze", "g_[0] g_[01]^-3"], capsys)[1] == first


def test_out_flag(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(["index", "g^-2", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text() == "-2\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "g_["],
        ["analyze", "g_({})"],
        ["conjugator", "g_[1] g^-1"],
        ["pure-cycles", "g"],
        ["analyze", "g", "--bases", "per=[1]"],
        ["weld", "/nonexistent/weld.json"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and err.startswith("error:")


def test_weld_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"components": ["per=[2]", "per=[3]"], "kappa": ["[0]", "[0]"]}))
    assert run(["weld", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"components": ["per=[2]", "per=[2]"]}))
    assert run(["weld", str(bad)], capsys)[0] == 2
    bad.write_text("{")
    assert run(["weld", str(bad)], capsys)[0] == 2


def test_invariant_failure_exits_3(monkeypatch, capsys):
    def broken(args):
        raise InvariantError("forced")

    monkeypatch.setitem(cli.COMMANDS, "index", (broken, "index"))
    code, _, err = run(["index", "g"], capsys)
    assert code == 3 and "forced" in err
