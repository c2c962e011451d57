import io
import json
import subprocess
import sys

import pytest

from conftest import CORPUS, KNOTS, LINKS, diagram
from regionmoves.cli import main
from regionmoves.diagram import is_descending, mirror, parse_pd, serialize_pd
from regionmoves.moves import solve_rcc

REPORT_KEYS = {"diagram", "n", "m", "ineffective", "path", "star_crossings", "per_crossing"}
LINK_KEYS = {
    "diagram", "n", "m", "components", "ineffective", "total_linking_number",
    "untiable", "rcc_witness", "rfcc_witness",
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def trefoil_file(tmp_path):
    path = tmp_path / "trefoil.pd"
    path.write_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n")
    return str(path)


def test_analyze_trefoil(capsys, trefoil_file):
    code, out, _ = run(capsys, "analyze", trefoil_file)
    assert code == 0
    assert "path: thm3.4; all crossings RFCC-realizable" in out
    assert "regions: 5" in out


def test_analyze_8_13(capsys):
    code, out, _ = run(capsys, "analyze", "corpus:knot_8_13")
    assert code == 0
    assert "path: thm3.5; star_count: 3; unrealizable crossings: 0 3 7" in out


def test_analyze_hopf(capsys):
    code, out, _ = run(capsys, "analyze", "corpus:hopf")
    assert code == 0
    assert "total linking number 1 (odd): not untiable by RCC/RFCC" in out


def test_analyze_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"))
    code, out, _ = run(capsys, "analyze", "-")
    assert code == 0 and "crossings: 3" in out


@pytest.mark.parametrize("name", list(CORPUS))
def test_analyze_json_schema(capsys, name):
    code, out, _ = run(capsys, "analyze", f"corpus:{name}", "--json")
    assert code == 0
    payload = json.loads(out)
    if name in LINKS:
        assert set(payload) == LINK_KEYS
        assert payload["untiable"] == (payload["total_linking_number"] % 2 == 0)
        assert (payload["rcc_witness"] is not None) == payload["untiable"]
    else:
        assert set(payload) == REPORT_KEYS
        assert payload["path"] in ("thm3.4", "thm3.5")
        assert len(payload["per_crossing"]) == payload["n"]
        for v in payload["per_crossing"]:
            assert set(v) == {"crossing", "rcc_witnesses", "rfcc_witnesses"}
            assert len(v["rcc_witnesses"]) == 4
            assert all(w == sorted(w) for w in v["rcc_witnesses"] + v["rfcc_witnesses"])


def test_parse_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.pd"
    bad.write_text("X[1,4,2,5] X[3,6,4,1]")
    code, out, err = run(capsys, "analyze", str(bad))
    assert code == 1 and out == "" and "error" in err


def test_usage_error_exit(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "corpus:trefoil"])
    assert exc.value.code == 1
    code, _, err = run(capsys, "solve", "corpus:trefoil", "--target", "01")
    assert code == 1 and "bitstring" in err
    code, _, _ = run(capsys, "analyze", "missing-file.pd")
    assert code == 1


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", "corpus:trefoil", "--crossing", "0")
    assert code == 0
    assert out.splitlines() == ["[0, 4]", "[3, 4]", "[0, 1, 2]", "[1, 2, 3]"]
    code, out, _ = run(capsys, "solve", "corpus:knot_8_13", "--crossing", "0", "--mode", "rfcc")
    assert code == 0 and out == "no solution\n"
    code, out, _ = run(capsys, "solve", "corpus:figure_eight", "--target", "0000", "--json")
    assert json.loads(out) == [[], [0, 3, 4], [1, 2, 5], [0, 1, 2, 3, 4, 5]]


def test_solve_zero_target_is_kernel(capsys):
    for name in KNOTS:
        d = diagram(name)
        _, out, _ = run(capsys, "solve", f"corpus:{name}", "--target", "0" * d.n, "--json")
        assert json.loads(out) == [sorted(s) for s in solve_rcc(d, ())]


def test_apply(capsys):
    t = serialize_pd(diagram("trefoil"))
    assert run(capsys, "apply", "corpus:trefoil", "--regions", "") == (0, t + "\n", "")
    _, once, _ = run(capsys, "apply", "corpus:trefoil", "--regions", "all")
    assert parse_pd(once) == diagram("trefoil")  # all five regions form an ineffective set
    _, rcc, _ = run(capsys, "apply", "corpus:trefoil", "--regions", "0,1,4")
    _, rfcc, _ = run(capsys, "apply", "corpus:trefoil", "--regions", "0,1,4", "--mode", "rfcc")
    assert parse_pd(rfcc) == mirror(parse_pd(rcc))
    code, _, err = run(capsys, "apply", "corpus:trefoil", "--regions", "7")
    assert code == 1 and "out of range" in err


def test_apply_twice_round_trips(capsys, tmp_path):
    _, out, _ = run(capsys, "apply", "corpus:figure_eight", "--regions", "0,2")
    path = tmp_path / "once.pd"
    path.write_text(out)
    _, back, _ = run(capsys, "apply", str(path), "--regions", "0,2")
    assert back.strip() == serialize_pd(diagram("figure_eight"))


@pytest.mark.parametrize("mode", ["rcc", "rfcc"])
def test_untie_knot(capsys, mode):
    code, out, _ = run(capsys, "untie", "corpus:trefoil", "--mode", mode)
    assert code == 0
    result = parse_pd(out.split("result: ")[1].splitlines()[0])
    assert is_descending(result) or is_descending(mirror(result))


def test_untie_links(capsys):
    code, out, _ = run(capsys, "untie", "corpus:hopf")
    assert code == 0 and "no untying witness" in out
    code, out, _ = run(capsys, "untie", "corpus:solomon", "--mode", "rfcc")
    assert code == 0 and "witness:" in out


def test_realize_trace_is_a_solution(capsys):
    code, out, _ = run(capsys, "shimizu", "corpus:knot_8_13", "--crossing", "0", "--trace")
    assert code == 0
    result = json.loads(out)["result"]
    _, solved, _ = run(capsys, "solve", "corpus:knot_8_13", "--crossing", "0", "--json")
    assert result in json.loads(solved)
    _, plain, _ = run(capsys, "realize", "corpus:knot_8_13", "--crossing", "0")
    assert json.loads(plain) == result


def test_oracle_and_corpus_commands(capsys):
    code, out, _ = run(capsys, "oracle", "--corpus")
    assert code == 0 and "MISMATCH" not in out
    assert out.count(": ok") == len(CORPUS)
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and out.count(": ok") == len(CORPUS)


def test_oracle_cap_skip(capsys, monkeypatch):
    monkeypatch.setenv("REGIONMOVES_ORACLE_CAP", "5")
    code, out, _ = run(capsys, "oracle", "corpus:figure_eight")
    assert code == 0 and "skipped" in out


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "regionmoves", "analyze", "corpus:mixed_sum", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
