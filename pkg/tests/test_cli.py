import json

import pytest

from twoweight.cli import RunConfig, ConfigError, main
from twoweight.codes import parse_paper


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weights_paper_format(capsys):
    code, out, _ = run(capsys, "weights", "--p", "5", "--h", "3", "--d", "1", "--format", "paper")
    assert code == 0
    assert out.splitlines()[0] == "[ <0, 1>, <20, 744>, <24, 14880> ]"


def test_weights_one_weight(capsys):
    code, out, _ = run(capsys, "weights", "--p", "3", "--h", "1", "--d", "1")
    assert out.splitlines()[0] == "[ <0, 1>, <6, 8> ]"


def test_weights_degenerate(capsys):
    code, out, _ = run(capsys, "weights", "--p", "5", "--h", "3", "--d", "6")
    assert code == 0
    assert "degenerate" in out
    assert "[ <0, 125>, <24, 15500> ]" in out


def test_weights_structured_round_trip(capsys):
    code, out, _ = run(capsys, "weights", "--p", "5", "--h", "3", "--d", "3", "--format", "structured")
    rec = json.loads(out)
    assert {"p", "h", "d", "m", "length", "source", "distribution"} <= set(rec)
    assert rec["distribution"] == [[0, 1], [12, 248], [24, 15376]]
    assert rec["variants"]["theorem"]["matches"] is False
    assert rec["variants"]["examples_consistent"]["matches"] is True
    paper = "[ " + ", ".join(f"<{w}, {f}>" for w, f in rec["distribution"]) + " ]"
    assert [list(e) for e in parse_paper(paper).entries] == rec["distribution"]


def test_strict_exit(capsys):
    code, *_ = run(capsys, "weights", "--p", "5", "--h", "3", "--d", "3", "--strict")
    assert code == 2
    code, *_ = run(capsys, "weights", "--p", "5", "--h", "3", "--d", "3")
    assert code == 0


def test_budget_exit(capsys):
    code, _, err = run(capsys, "weights", "--p", "11", "--h", "3", "--d", "1")
    assert code != 0 and "budget" in err
    code, out, _ = run(capsys, "weights", "--p", "11", "--h", "3", "--d", "1", "--use-orbits")
    assert code == 0 and out.startswith("[ <0, 1>, <110, 15960>, <120, 1755600> ]")


def test_validation(capsys):
    assert run(capsys, "weights", "--p", "4", "--h", "2")[0] == 64
    assert run(capsys, "weights", "--p", "5", "--h", "2", "--d", "5")[0] == 64
    assert run(capsys, "graph", "--p", "2", "--h", "4")[0] == 64
    with pytest.raises(ConfigError):
        RunConfig("weights", p=[3], h=[]).validate()


def test_ring_info(capsys):
    code, out, _ = run(capsys, "ring", "--p", "3", "--h", "2", "--info")
    assert code == 0
    assert "modulus: x^2 + 0*x + 1" in out
    assert "teichmuller_size: 9" in out


def test_puncture_cmd(capsys):
    code, out, _ = run(capsys, "puncture", "--p", "5", "--h", "3", "--d", "1", "--format", "structured")
    rec = json.loads(out)
    assert rec["length"] == 6 and rec["projective"] is True
    assert rec["griesmer"]["equality"] and rec["mdr"]["mdr"]


def test_graph_cmd_and_export(capsys, tmp_path):
    path = tmp_path / "e.txt"
    code, out, _ = run(
        capsys, "graph", "--p", "2", "--h", "4", "--experimental", "--export", "edgelist", str(path), "--format", "structured"
    )
    rec = json.loads(out)
    assert code == 0
    assert rec["srg"]["lambda"] == 16 and rec["srg"]["mu"] == 6
    assert rec["edges"] == 256 * 45 // 2
    assert len(path.read_text().splitlines()) == rec["edges"]


def test_graph_trivial(capsys):
    code, out, _ = run(capsys, "graph", "--p", "3", "--h", "1")
    assert code == 0 and "complete" in out


def test_cover_cmd(capsys):
    code, out, _ = run(capsys, "cover", "--p", "3", "--h-low", "1", "--format", "structured")
    rec = json.loads(out)
    assert code == 0 and rec["ok"]
    assert rec["collapsed_per_vertex"] == [8] and rec["neighbor_fiber_counts"] == [3]


def test_verify_all_p3_h3(capsys):
    code, out, _ = run(capsys, "verify-all", "--p", "3", "--h", "3")
    assert code == 0
    srg_rows = [ln for ln in out.splitlines() if " srg " in ln and "d=1 " in ln]
    assert "(729, 104, 31, 12)" in srg_rows[0]


def test_verify_all_p2(capsys):
    code, out, _ = run(capsys, "verify-all", "--p", "2", "--h", "4", "--experimental")
    assert code == 0
    assert "(256, 45, 16, 6)" in out


def test_output_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["verify-all", "--p", "3", "--h", "1", "2", "--out", str(a)]) == 0
    assert main(["verify-all", "--p", "3", "--h", "1", "2", "--workers", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "FAIL" not in a.read_text().replace("0 FAIL", "")
