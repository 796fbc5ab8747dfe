import random
import subprocess
import sys

import pytest

from treepack.degseq import DegreeMatrix, count_never_leaves, parse_degree_matrices
from treepack.egraph import parse_graph, verify_realization
from treepack.generate import random_matrix


def run(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "treepack", *map(str, args)],
        capture_output=True,
        text=True,
        input=stdin,
        timeout=600,
    )


@pytest.fixture
def case_files(tmp_path, fixtures):
    def write(case):
        f = fixtures[case - 1]
        mp = tmp_path / f"m{case}.txt"
        gp = tmp_path / f"g{case}.txt"
        mp.write_text(f.matrix.to_text())
        gp.write_text(f.adjacency_text)
        return mp, gp

    return write


def test_check_case1(case_files):
    mp, _ = case_files(1)
    r = run("check", mp)
    assert r.returncode == 0
    for bit in ("valid", "no common leaves", "0 never-leaves", "sum graphical", "k=4 builder eligible"):
        assert bit in r.stdout


def test_check_shared_leaf(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text(DegreeMatrix.from_rows([[1, 2, 1], [1, 1, 2]]).to_text())
    r = run("check", p)
    assert r.returncode == 1
    assert "common leaf: vertex 1" in r.stdout


def test_check_never_leaf_eligibility(tmp_path):
    m = random_matrix(5, 16, random.Random(0), min_never_leaves=6)
    p = tmp_path / "m.txt"
    p.write_text(m.to_text())
    r = run("check", p)
    assert r.returncode == 0
    assert f"never-leaves builder eligible ({count_never_leaves(m)} >= 2k-4 = 6)" in r.stdout


def test_check_parse_error_position(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2 3\n1 2 1\n1 z 1\n")
    r = run("check", p)
    assert r.returncode == 1
    assert "line 3, column 3" in r.stderr


def test_realize_case7_round_trip(case_files, tmp_path):
    mp, _ = case_files(7)
    out = tmp_path / "g.txt"
    r = run("realize", mp, "-o", out)
    assert r.returncode == 0, r.stderr
    assert "strategy: quartet, peel depth: 0" in r.stderr
    assert run("verify", mp, out).returncode == 0


def test_realize_edge_list(case_files, tmp_path):
    mp, _ = case_files(4)
    out = tmp_path / "g.txt"
    assert run("realize", mp, "--format", "edges", "-o", out).returncode == 0
    assert out.read_text().startswith("10 4\n")
    assert run("verify", mp, out).returncode == 0


def test_realize_large_quartet_depth(tmp_path):
    # 28 leaves in all, so the peel reaches n = 10 before every row is a path
    n = 30
    rows = [[1] * 22 + [2, 2] + [22] + [2] * 5]
    extra = [22, 23, 25, 26, 27, 28]
    for c in range(3):
        r = [2] * n
        r[extra[2 * c]] = r[extra[2 * c + 1]] = 1
        rows.append(r)
    m = DegreeMatrix.from_rows(rows)
    assert m.is_valid()
    p = tmp_path / "m.txt"
    p.write_text(m.to_text())
    r = run("realize", p)
    assert r.returncode == 0
    assert "strategy: quartet, peel depth: 20" in r.stderr
    g = parse_graph(r.stdout, 4)
    assert verify_realization(g, m).ok


def test_realize_hypothesis_failure(tmp_path):
    m = random_matrix(6, 14, random.Random(6), min_never_leaves=2)
    assert count_never_leaves(m) < 8
    p = tmp_path / "m.txt"
    p.write_text(m.to_text())
    r = run("realize", p, "--strategy", "never-leaves")
    assert r.returncode == 2


def test_realize_budget_exceeded(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text(random_matrix(5, 13, random.Random(1)).to_text())
    r = run("realize", p, "--strategy", "oracle", "--budget", "1")
    assert r.returncode == 3


def test_verify_cases(case_files):
    m11, g11 = case_files(11)
    _, g12 = case_files(12)
    assert run("verify", m11, g11).returncode == 0
    r = run("verify", m11, g12)
    assert r.returncode == 1
    assert "degree" in r.stdout


def test_verify_missing_edge(case_files, tmp_path):
    mp, gp = case_files(1)
    rows = [r.split() for r in gp.read_text().split("\n") if r.strip()]
    rows[0][1] = rows[1][0] = "0"
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(" ".join(r) for r in rows) + "\n")
    r = run("verify", mp, bad)
    assert r.returncode == 1
    assert "not a spanning tree" in r.stdout


def test_enumerate_counts():
    r = run("enumerate", "-k", 4, "-n", "8..10", "--count")
    assert r.returncode == 0
    assert r.stdout == "8 1\n9 2\n10 11\n"


def test_enumerate_stream_is_readable(tmp_path):
    out = tmp_path / "c.txt"
    assert run("enumerate", "-k", 4, "-n", 10, "-o", out).returncode == 0
    mats = list(parse_degree_matrices(out.read_text()))
    assert len(mats) == 11
    # each record is accepted by check
    one = tmp_path / "one.txt"
    one.write_text(mats[3].to_text())
    assert run("check", one).returncode == 0


def test_sweep_quintets_to_12():
    r = run("sweep", "-k", 5, "--n-max", 12, "--acceptance")
    assert r.returncode == 0, r.stdout + r.stderr
    assert "# total classes: 14" in r.stdout
    assert "10\t1\t1\t0\t0" in r.stdout


def test_sweep_class_bound():
    r = run("sweep", "-k", 4, "--n-max", 10, "--class-bound", 13)
    assert r.returncode == 1


def test_gen_is_seeded(tmp_path):
    a = run("gen", "-k", 4, "-n", 12, "--count", 3, "--seed", 5)
    b = run("gen", "-k", 4, "-n", 12, "--count", 3, "--seed", 5)
    assert a.stdout == b.stdout
    mats = list(parse_degree_matrices(a.stdout))
    assert len(mats) == 3 and all(m.is_valid() for m in mats)
    j = run("gen", "-k", 4, "-n", 12, "--format", "json", "--seed", 5)
    p = tmp_path / "m.json"
    p.write_text(j.stdout)
    assert run("check", p).returncode == 0


def test_usage_errors():
    assert run("bogus").returncode == 64
    assert run("enumerate", "-k", 4, "-n", 6).returncode == 64
    assert run("check", "/nonexistent/file").returncode == 64


def test_jobs_from_environment(monkeypatch):
    monkeypatch.setenv("TREEPACK_JOBS", "2")
    r = run("enumerate", "-k", 4, "-n", 11, "--count")
    assert r.stdout == "11 50\n"
