import json
from pathlib import Path

import pytest

from birkhoff6.cli import main

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_dirichlet(capsys):
    code, out, _ = run(capsys, "analyze", "--input", str(FIX / "dirichlet.json"))
    assert code == 0 and out.startswith("verdict: regular")


def test_analyze_case5_json(capsys):
    code, out, _ = run(capsys, "analyze", "--input", str(FIX / "case5_forbidden.json"),
                       "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["verdict"] == "irregular"
    assert data["failing"] and all(f["u"] == 0 for f in data["failing"])
    assert set(data) >= {"verdict", "case_a", "case_b", "per_k_dets", "failing",
                         "condition_reports"}
    assert data["case_a"]["case"] == 5


def test_analyze_duplicate_exit_2(capsys):
    code, out, err = run(capsys, "analyze", "--input", str(FIX / "duplicate.json"))
    assert code == 2 and out == ""
    assert "DuplicateOrder" in err and "endpoint_a[1].p" in err


def test_analyze_bad_json_and_missing_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"endpoint_a": [}')
    code, _, err = run(capsys, "analyze", "--input", str(bad))
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "analyze", "--input", str(tmp_path / "none.json"))
    assert code == 2 and "cannot read" in err


def test_analyze_range_and_zero_beta(capsys, tmp_path):
    doc = json.loads((FIX / "dirichlet.json").read_text())
    doc["endpoint_b"][2] = {"p": 6, "alpha": ["1"] * 7}
    f = tmp_path / "p6.json"
    f.write_text(json.dumps(doc))
    code, _, err = run(capsys, "analyze", "--input", str(f))
    assert code == 2 and "OrderRangeError" in err and "endpoint_b[2].p" in err
    doc["endpoint_b"][2] = {"q": 3, "beta": ["1", "0", "0", "0"]}
    f.write_text(json.dumps(doc))
    code, _, err = run(capsys, "analyze", "--input", str(f))
    assert code == 2 and "ZeroLeadingBeta" in err


def test_json_output_is_byte_identical(capsys, tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        run(capsys, "analyze", "--input", str(FIX / "case5_forbidden.json"), "--format", "json",
            "--out", str(tmp_path / name))
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]


def test_enumerate_cases(capsys):
    code, out, _ = run(capsys, "enumerate-cases", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert (data["total_ordered"], data["pure"], data["mixed_canonical"], data["redundant"]) == (
        27, 3, 7, 17)
    assert data["case10_forced"] == [0, 1, 2]
    code, out, _ = run(capsys, "enumerate-cases")
    assert "mixed canonical cases    : 7" in out


def test_verify_text_and_json_agree(capsys):
    args = ["verify-propositions", "--cases", "5,6", "--grid", "1/2,-1,3,1+z^3"]
    _, text, _ = run(capsys, *args)
    _, js, _ = run(capsys, *args, "--format", "json", "--max-witnesses", "2")
    data = json.loads(js)
    lines = [ln for ln in text.splitlines() if not ln.startswith(" ") and "points=" in ln]
    assert len(lines) == len(data["reports"])
    for ln, rep in zip(lines, data["reports"]):
        assert rep["status"] in ln
        assert f"witnesses={rep['witness_count']}" in ln
        assert rep["agreements"] + rep["witness_count"] == rep["points_tested"]
        assert len(rep["witnesses"]) <= 2
    s = data["summary"]
    assert f"summary: confirmed={s['confirmed']} refuted={s['refuted']}" in text


def test_verify_rejects_bad_grid():
    with pytest.raises(SystemExit) as info:
        main(["verify-propositions", "--grid", "1,zz"])
    assert info.value.code == 2


def test_sweep_is_deterministic(capsys):
    _, a, _ = run(capsys, "sweep", "--seed", "3", "--count", "8", "--format", "json")
    _, b, _ = run(capsys, "sweep", "--seed", "3", "--count", "8", "--format", "json")
    assert a == b
    data = json.loads(a)
    assert data["count"] == 8 and data["regular"] + data["irregular"] == 8


def test_sweep_case_filter(capsys):
    _, out, _ = run(capsys, "sweep", "--count", "4", "--cases", "1,2,3,4", "--format", "json")
    data = json.loads(out)
    assert all(p["case_a"] <= 4 for p in data["problems"])
