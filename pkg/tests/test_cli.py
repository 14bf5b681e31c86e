import json

import pytest

from lexorder.cli import main
from util import A_STAR_B, DENSE, ZETA


@pytest.fixture
def cfg(tmp_path):
    def write(rules, alphabet="a < b", name="g.cfg"):
        path = tmp_path / name
        path.write_text(f"alphabet: {alphabet}\nstart: S\n{rules}\n")
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_json(cfg, capsys):
    code, out, _ = run(capsys, "analyze", cfg(A_STAR_B), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["order_type"] == ["neg_omega"]
    assert json.dumps(data, sort_keys=True, indent=2) + "\n" == out


def test_analyze_text(cfg, capsys):
    code, out, err = run(capsys, "analyze", cfg(ZETA))
    assert code == 0
    assert "-w + w" in out and "zeta" in err


def test_dense_completes(cfg, capsys):
    code, out, _ = run(capsys, "analyze", cfg(DENSE), "--json")
    data = json.loads(out)
    assert code == 0
    assert (data["verdict"], data["reason"]) == ("not_rank_le_1", "not_scattered")


def test_enumerate(cfg, capsys):
    code, out, _ = run(capsys, "enumerate", cfg(A_STAR_B), "--max-len", "3")
    assert (code, out) == (0, "aab\nab\nb\n")
    code, out, _ = run(capsys, "enumerate", cfg("S -> a S | eps"), "--max-len", "1", "--json")
    assert json.loads(out) == {"words": ["eps", "a"]}


def test_limits_sup_inf(cfg, capsys):
    path = cfg(ZETA)
    assert run(capsys, "limits", path)[1] == "(a)^w\nb(a)^w\n"
    assert run(capsys, "sup", path)[1] == "limit_sup b(a)^w\n"
    code, out, _ = run(capsys, "inf", cfg(A_STAR_B), "--json")
    assert json.loads(out) == {"kind": "limit_inf", "limit": "(a)^w"}
    code, out, _ = run(capsys, "sup", cfg(A_STAR_B), "--json")
    assert json.loads(out) == {"kind": "max", "word": "b"}


def test_check(cfg, capsys):
    code, out, _ = run(capsys, "check", cfg(ZETA))
    assert code == 0 and "verdict rank_le_1" in out


@pytest.mark.parametrize("argv", [
    ["analyze", "/nonexistent.cfg"],
    ["sup", "{good}", "--budget", "2"],
    ["enumerate", "{good}", "--max-len", "99"],
    ["analyze", "{bad}"],
    ["frobnicate"],
])
def test_input_errors(cfg, capsys, argv):
    good, bad = cfg(A_STAR_B), cfg("S -> a X", name="bad.cfg")
    argv = [a.format(good=good, bad=bad) for a in argv]
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 1


def test_cap_exceeded(cfg, capsys):
    code, _, err = run(capsys, "enumerate", cfg("S -> a S | b S | eps"), "--max-len", "12",
                       "--cap", "100")
    assert code == 2 and err.startswith("lexorder:")


def test_budget_exceeded(cfg, capsys):
    path = cfg("S -> a a a a a a a a a b S | a")
    code, _, _ = run(capsys, "sup", path, "--budget", "4")
    assert code == 2


def test_empty_language_sup(cfg, capsys):
    code, _, err = run(capsys, "sup", cfg("S -> a S"))
    assert code == 1 and "empty" in err
