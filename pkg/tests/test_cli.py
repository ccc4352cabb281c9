from __future__ import annotations

import io
import json
import shutil
from pathlib import Path

import pytest

from toricjets.cli import main
from toricjets.polyfile import write
from toricjets.polytope import LatticePolytope, standard_simplex

ROOT = Path(__file__).resolve().parent.parent
HEXAGON = str(ROOT / "tests" / "data" / "hexagon.poly")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def simplex33(tmp_path):
    path = tmp_path / "simplex.poly"
    write(standard_simplex(3, 3), path)
    return str(path)


def test_analyze_hexagon():
    code, out, _ = run("analyze", HEXAGON, "--max-k", "4")
    assert code == 0
    assert "fixpoint orders [1 1 1 1 1 1]  generic 2" in out
    assert "cayley order 2: none" in out


def test_verify_veronese(simplex33):
    code, out, _ = run("verify", simplex33, "-k", "3")
    assert code == 0
    assert "k=3: i=yes ii=yes iii=yes iv=yes v=yes  consistent" in out


def test_verify_hexagon_all_false():
    code, out, _ = run("verify", HEXAGON, "-k", "2", "--format", "records")
    assert code == 0
    rec = json.loads(out)
    assert rec["format_version"] == 1
    (verdict,) = rec["verdicts"]
    assert set(verdict["conditions"].values()) == {False}
    assert verdict["consistent"] and not rec["violation"]


def test_records_are_key_sorted_and_exact():
    code, out, _ = run("seshadri", HEXAGON, "--format", "records")
    assert code == 0
    line = out.strip()
    assert "\n" not in line
    rec = json.loads(line)
    assert list(rec) == sorted(rec)
    assert rec["seshadri"]["s2"] == "2" and rec["seshadri"]["s2_direction"] == [1, 0]


def test_reports_are_byte_identical():
    first = run("analyze", HEXAGON, "--format", "records")
    second = run("analyze", HEXAGON, "--format", "records")
    assert first == second


def test_cayley_command_lengths(simplex33):
    code, out, _ = run("cayley", simplex33, "-k", "3", "--length", "4")
    assert code == 0 and "length 4" in out and "strict yes" in out
    code, out, _ = run("cayley", simplex33, "-k", "3", "--strict-mode", "project")
    assert "length 2" in out and "strict yes" in out


def test_usage_and_parse_errors(tmp_path):
    assert run()[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("verify", str(tmp_path / "missing.poly"))[0] == 1
    assert run("verify", HEXAGON, "-k", "0")[0] == 1
    bad = tmp_path / "bad.poly"
    bad.write_text("dim 2\nvertices 3\n0 0\n1 x\n0 1\n")
    code, _, err = run("verify", str(bad))
    assert code == 1 and "line 4" in err
    interior = tmp_path / "interior.poly"
    interior.write_text("dim 2\nvertices 4\n0 0\n2 0\n0 2\n1 1\n")
    code, _, err = run("analyze", str(interior))
    assert code == 1 and "not extreme" in err


def test_non_smooth_input_is_reported_not_failed(tmp_path):
    path = tmp_path / "kite.poly"
    write(LatticePolytope.from_vertices([(0, 0), (1, 0), (0, 2)]), path)
    code, out, _ = run("verify", str(path))
    assert code == 0 and "not smooth" in out


def test_gen_writes_parsable_output(tmp_path):
    code, out, _ = run("gen", "simplex", "--param", "n=2", "--param", "k=3")
    assert code == 0 and out.splitlines()[1:3] == ["dim 2", "vertices 3"]
    assert run("gen", "simplex", "--param", "n")[0] == 1
    assert run("gen", "nope")[0] == 1
    a = run("--seed", "3", "gen", "random_cayley", "--param", "dim=3", "--param", "k=2")
    b = run("gen", "random_cayley", "--param", "dim=3", "--param", "k=2", "--seed", "3")
    assert a == b and a[0] == 0


def test_batch_preserves_input_order(tmp_path):
    for name in ("b.poly", "a.poly"):
        shutil.copy(HEXAGON, tmp_path / name)
    write(standard_simplex(2, 2), tmp_path / "c.poly")
    code, out, _ = run("batch", str(tmp_path), "--jobs", "2", "--format", "records")
    assert code == 0
    sources = [json.loads(line)["source"] for line in out.splitlines()]
    assert [Path(s).name for s in sources] == ["a.poly", "b.poly", "c.poly"]


def test_shipped_corpus_verifies_cleanly():
    code, out, _ = run("batch", str(ROOT / "corpus"), "--format", "records")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) >= 100
    assert not any(r.get("violation") for r in records)
