import json
import subprocess
import sys
from pathlib import Path

import pytest

from fracsemi import basisfile
from fracsemi.cli import main
from fracsemi.fixtures import field_basis, paper_basis
from fracsemi.semifield import StandardBasis

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_verify_paper(capsys):
    code, doc = run_json(capsys, "verify", "paper-example")
    assert code == 0 and doc["passed"] and doc["combinations_checked"] == 127


def test_verify_identity_failure(capsys, tmp_path):
    b = paper_basis()
    bad = StandardBasis(7, (b[1],) + b.mats[1:])
    basisfile.dump(bad, tmp_path / "bad.txt")
    code, doc = run_json(capsys, "verify", tmp_path / "bad.txt")
    assert code == 1
    assert doc["failed_condition"] == "IdentityMatrix" and doc["witness"] == {"matrix": 1}


def test_verify_singular_witness(capsys, tmp_path):
    b = paper_basis()
    text = basisfile.serialize(b).splitlines()
    # A_7 occupies the last seven lines; clear column 5 of it
    text[-7:] = [row[:4] + "0" + row[5:] for row in text[-7:]]
    (tmp_path / "bad.txt").write_text("\n".join(text) + "\n")
    code, doc = run_json(capsys, "verify", tmp_path / "bad.txt")
    assert code == 1
    assert doc["failed_condition"] == "SingularCombination"
    assert doc["witness"] == {"lambda": "0000001"}


def test_verify_field_fixture(capsys):
    code, doc = run_json(capsys, "verify", "f128")
    assert code == 0 and doc["passed"]


def test_verify_parse_error_exit_2(capsys, tmp_path):
    (tmp_path / "broken.txt").write_text("n 2\n\n10\n0x\n\n01\n10\n")
    code, out, err = run(capsys, "verify", tmp_path / "broken.txt")
    assert code == 2 and "line 4, column 2" in err


def test_verify_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", tmp_path / "nope.txt")
    assert code == 2 and "cannot read" in err


def test_verify_writes_table(capsys, tmp_path):
    code, doc = run_json(capsys, "verify", "f8", "--table", tmp_path / "t.txt")
    assert code == 0
    rows = (tmp_path / "t.txt").read_text().splitlines()
    assert len(rows) == 8 and all(len(r.split()) == 8 for r in rows)
    # a_2 * a_2 = a_3: row 2, column 2 holds 0x4
    assert rows[2].split()[2] == "4"


def test_analyze_paper_sub3(capsys):
    code, doc = run_json(capsys, "analyze", "paper-example", "--sub", "3")
    assert code == 0
    scan = doc["subsemifields"][0]
    assert scan["m"] == 3 and scan["candidates"] == 651
    (f8,) = [f for f in scan["found"] if f["basis"] == ["1000000", "0100000", "0010000"]]
    assert f8["closed"] and f8["associative"] and f8["commutative"]
    assert f8["field"] == {"order": 8, "degree": 3, "minimal_polynomial": "x^3+x+1"}
    assert f8["dimension"] == "7/3" and not f8["integral"]
    assert doc["commutative"]["value"] is False
    assert doc["commutative"]["witness"] == {"x": "0100000", "y": "0001000", "xy": "0001100", "yx": "0000010"}
    assert doc["associative"]["value"] is False
    assert doc["nuclei"] == {"left": 1, "middle": 1, "right": 1, "center": 1}
    assert {"m": 3, "basis": f8["basis"], "dimension": "7/3", "integral": False} in doc[
        "maximal_proper_subsemifields"
    ]


def test_analyze_sub1_and_sub2(capsys):
    code, doc = run_json(capsys, "analyze", "paper-example", "--sub", "1", "--sub", "2")
    assert code == 0
    one, two = doc["subsemifields"]
    assert one["candidates"] == 1 and [f["basis"] for f in one["found"]] == [["1000000"]]
    assert two["candidates"] == 63 and len(two["found"]) == 3
    # span{1} sits inside the F_4 copies, so it is not maximal
    assert all(m["m"] == 2 for m in doc["maximal_proper_subsemifields"])


def test_analyze_is_stable(capsys):
    first = run(capsys, "analyze", "paper-example", "--sub", "3")[1]
    second = run(capsys, "analyze", "paper-example", "--sub", "3")[1]
    assert first == second


def test_analyze_failure_exit_1(capsys, tmp_path):
    b = paper_basis()
    basisfile.dump(StandardBasis(7, (b[1],) + b.mats[1:]), tmp_path / "bad.txt")
    code, doc = run_json(capsys, "analyze", tmp_path / "bad.txt", "--sub", "3")
    assert code == 1 and not doc["verification"]["passed"]


def test_analyze_bad_sub(capsys):
    code, _, err = run(capsys, "analyze", "f8", "--sub", "5")
    assert code == 2


def test_opposite_double_application(capsys, tmp_path):
    src = GOLDEN / "paper-example.txt"
    assert run(capsys, "opposite", src, tmp_path / "opp.txt")[0] == 0
    assert run(capsys, "opposite", tmp_path / "opp.txt", tmp_path / "back.txt")[0] == 0
    assert (tmp_path / "back.txt").read_bytes() == src.read_bytes()
    assert (tmp_path / "opp.txt").read_bytes() != src.read_bytes()
    code, doc = run_json(capsys, "verify", tmp_path / "opp.txt")
    assert code == 0


def test_opposite_of_field_is_identity(capsys, tmp_path):
    basisfile.dump(field_basis(0b1011), tmp_path / "f8.txt")
    run(capsys, "opposite", tmp_path / "f8.txt", tmp_path / "opp.txt")
    assert (tmp_path / "opp.txt").read_bytes() == (tmp_path / "f8.txt").read_bytes()


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ("0100000", "0100000", "0010000"),
        ("0100000", "0001000", "0001100"),
        ("1000000", "0110101", "0110101"),
        ("1000000", "0000000", "0000000"),
    ],
)
def test_mult(capsys, x, y, expected):
    code, out, _ = run(capsys, "mult", "paper-example", x, y)
    assert code == 0 and out.strip() == expected


@pytest.mark.parametrize("operand", ["010000", "01000002", "abcdefg"])
def test_mult_bad_operand(capsys, operand):
    code, _, err = run(capsys, "mult", "paper-example", operand, "1000000")
    assert code == 2 and "operand" in err


def test_show_fixture(capsys):
    code, out, _ = run(capsys, "show", "paper-example")
    assert code == 0 and out == (GOLDEN / "paper-example.txt").read_text()


def test_search_fully_pinned(capsys, tmp_path):
    cfg = tmp_path / "all.toml"
    cfg.write_text('n = 7\n[[pin]]\nsource = "paper-example"\n')
    code, doc = run_json(capsys, "search", cfg, "--out", tmp_path / "sol")
    assert code == 0 and doc["solutions"] == 1 and doc["exhausted"]
    assert (tmp_path / "sol" / "solution-0001.txt").read_text() == (GOLDEN / "paper-example.txt").read_text()
    manifest = json.loads((tmp_path / "sol" / "manifest.json").read_text())
    assert manifest["solutions"] == 1 and set(manifest) >= {"nodes", "prunes", "elapsed", "files"}


def test_search_order8(capsys, tmp_path):
    cfg = tmp_path / "o8.toml"
    cfg.write_text('n = 3\noutput = "o8"\n')
    code, doc = run_json(capsys, "search", cfg)
    assert code == 0 and doc["solutions"] == 8 and doc["exhausted"]
    for name in doc["files"]:
        code, adoc = run_json(capsys, "analyze", tmp_path / "o8" / name)
        assert adoc["commutative"]["value"] and adoc["associative"]["value"]


def test_search_sharded_matches(capsys, tmp_path):
    cfg = tmp_path / "o8.toml"
    cfg.write_text("n = 3\n")
    run_json(capsys, "search", cfg, "--out", tmp_path / "a")
    code, doc = run_json(capsys, "search", cfg, "--out", tmp_path / "b", "--split-depth", "2", "--workers", "2")
    assert code == 0 and doc["solutions"] == 8
    for name in doc["files"]:
        assert (tmp_path / "a" / name).read_text() == (tmp_path / "b" / name).read_text()


def test_search_budget_exit_3(capsys, tmp_path):
    cfg = tmp_path / "b.toml"
    cfg.write_text("n = 4\n[budget]\nmax_nodes = 3\n")
    code, doc = run_json(capsys, "search", cfg, "--out", tmp_path / "s")
    assert code == 3 and doc["solutions"] == 0 and not doc["exhausted"]


def test_search_inconsistent_exit_2(capsys, tmp_path):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("n = 3\n[[pin]]\nmatrix = 1\ncolumn = 2\nbits = '110'\n")
    code, out, err = run(capsys, "search", cfg)
    assert code == 2 and "A_1 column 2" in err


def test_search_progress_events(capsys, tmp_path):
    cfg = tmp_path / "o8.toml"
    cfg.write_text("n = 3\n")
    code, out, err = run(capsys, "search", cfg, "--out", tmp_path / "s", "--progress", "--progress-every", "100")
    events = [json.loads(line) for line in err.splitlines()]
    assert [e["event"] for e in events].count("solution") == 8
    assert events[-1]["event"] == "done"


def test_module_entry_point_exit_codes(tmp_path):
    ok = subprocess.run([sys.executable, "-m", "fracsemi", "verify", "f8"], capture_output=True)
    assert ok.returncode == 0
    usage = subprocess.run([sys.executable, "-m", "fracsemi", "frobnicate"], capture_output=True)
    assert usage.returncode == 2


CONFIGS = Path(__file__).parent.parent / "configs"


def test_shipped_f8_block_config(capsys, tmp_path):
    code, doc = run_json(capsys, "search", CONFIGS / "f8-block.toml", "--out", tmp_path / "s")
    assert code == 0 and doc["solutions"] >= 1
    found = [basisfile.load(tmp_path / "s" / name) for name in doc["files"]]
    assert paper_basis() in found


@pytest.mark.parametrize("name, count", [("order8.toml", 8), ("paper-last-matrix.toml", 1)])
def test_shipped_configs(capsys, tmp_path, name, count):
    code, doc = run_json(capsys, "search", CONFIGS / name, "--out", tmp_path / "s")
    assert code == 0 and doc["solutions"] == count and doc["exhausted"]
