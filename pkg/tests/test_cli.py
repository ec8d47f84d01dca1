import subprocess
import sys

import pytest

from conftest import GOLDEN, golden
from dnnf_forge.cli import main
from dnnf_forge.cnf import parse_dimacs
from dnnf_forge.nnf import check_decomposable, parse_nnf


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_gen(capsys, tmp_path):
    code, out, _ = cli(capsys, "gen", "delta-a", 10)
    cnf = parse_dimacs(out)
    assert code == 0 and cnf.num_vars == 30 and len(cnf.clauses) == 1000
    code, out, _ = cli(capsys, "gen", "delta-b", 10)
    assert out.startswith("c aux 31 bva\nc aux 32 bva\np cnf 32 30\n")
    code, _, err = cli(capsys, "gen", "delta-a", 0)
    assert code == 1 and "n must be" in err


def test_gen_random_seed(capsys, monkeypatch):
    _, a, _ = cli(capsys, "--seed", 3, "gen", "random", 6)
    _, b, _ = cli(capsys, "--seed", 3, "gen", "random", 6)
    _, c, _ = cli(capsys, "--seed", 4, "gen", "random", 6)
    assert a == b != c
    monkeypatch.setenv("DNNF_FORGE_SEED", "3")
    _, d, _ = cli(capsys, "--seed", 4, "gen", "random", 6)
    assert d == a


def test_compile_bva(capsys, tmp_path):
    src = tmp_path / "d.cnf"
    cli(capsys, "gen", "delta-a", 10, "--out", src)
    out = tmp_path / "d.nnf"
    code, text, _ = cli(capsys, "compile", src, "--transform", "bva", "--max-steps", 8, "--out", out, "--report")
    assert code == 0
    assert "aux_count=2\n" in text and "verified=unverified\n" in text
    assert check_decomposable(parse_nnf(out.read_bytes()))[0]


def test_compile_passthrough(capsys, tmp_path):
    out = tmp_path / "f.nnf"
    code, _, _ = cli(capsys, "compile", GOLDEN / "fig1.cnf", "--transform", "none", "--out", out)
    assert code == 0
    code, text, _ = cli(capsys, "check", out, "--decomposable", "--deterministic", "structural",
                        "--equiv", GOLDEN / "fig1.cnf")
    assert code == 0 and text.count("yes") == 3


def test_compile_formula(capsys, tmp_path):
    src = tmp_path / "f.txt"
    src.write_text("(xor (or (var 1) (var 2)) (var 3))\n")
    code, text, _ = cli(capsys, "compile", src, "--transform", "tseitin", "--report")
    assert code == 0 and "verified=yes" in text


def test_compile_precompiled(capsys):
    code, text, _ = cli(capsys, "compile", GOLDEN / "fig1.cnf", "--nnf", GOLDEN / "fig1b.nnf")
    assert code == 0 and text.encode() == golden("fig1b.nnf")
    code, _, _ = cli(capsys, "compile", GOLDEN / "fig1.cnf", "--nnf", GOLDEN / "fig1a.nnf", "--transform", "bva")
    assert code == 1


def test_compile_wrong_precompiled_is_invariant_failure(capsys):
    code, _, err = cli(capsys, "compile", GOLDEN / "fig1.cnf", "--nnf", GOLDEN / "and2.nnf")
    assert code == 3 and "not equivalent" in err


def test_compile_errors(capsys, tmp_path):
    code, _, err = cli(capsys, "compile", tmp_path / "missing.cnf")
    assert code == 1 and "no such file" in err
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 3 1\n1 -1 0\n")
    assert cli(capsys, "compile", bad)[0] == 1
    code, _, err = cli(capsys, "compile", GOLDEN / "delta_a_3.cnf", "--timeout", 0)
    assert code == 2 and "resource limit" in err


def test_check_figures(capsys):
    code, text, _ = cli(capsys, "check", GOLDEN / "fig1a.nnf", "--decomposable", "--deterministic", "oracle")
    assert code == 1
    assert "decomposable: yes" in text and "deterministic(oracle): no" in text
    code, text, _ = cli(capsys, "check", GOLDEN / "fig1b.nnf", "--decomposable", "--deterministic", "oracle")
    assert code == 0
    code, text, _ = cli(capsys, "check", GOLDEN / "fig1b.nnf")
    assert text == "decomposable: yes\n"


def test_query(capsys):
    assert cli(capsys, "query", GOLDEN / "fig1b.nnf", "--count")[1] == "count: 7\n"
    code, _, err = cli(capsys, "query", GOLDEN / "fig2b.nnf", "--count")
    assert code == 1 and "not deterministic" in err
    assert cli(capsys, "query", GOLDEN / "fig1a.nnf", "--entails", "1 3")[1] == "entails: true\n"
    assert cli(capsys, "query", GOLDEN / "fig1a.nnf", "--entails", "4")[1] == "entails: false\n"
    assert cli(capsys, "query", GOLDEN / "fig1a.nnf", "--consistent")[1] == "consistent: true\n"
    assert cli(capsys, "query", GOLDEN / "fig1a.nnf", "--min-card")[1] == "min-card: 1\n"
    assert cli(capsys, "query", GOLDEN / "false.nnf", "--min-card")[1] == "min-card: inconsistent\n"
    assert cli(capsys, "query", GOLDEN / "fig1a.nnf", "--entails", "x")[0] == 1


def test_bench(capsys):
    code, text, _ = cli(capsys, "bench", "--n-list", "3,2", "--timeout", 30)
    lines = text.splitlines()
    assert code == 0 and len(lines) == 4
    assert lines[2].startswith("3 ") and lines[3].startswith("2 ")
    code, text, _ = cli(capsys, "bench", "--n-list", "")
    assert len(text.splitlines()) == 2


def test_bench_timeout_dashes(capsys):
    _, text, _ = cli(capsys, "bench", "--n-list", "12", "--timeout", 0.01)
    assert text.splitlines()[2].count("--") == 3


def test_bench_jobs_same_rows(capsys):
    def rows(text):
        # drop the time columns
        return [[f for i, f in enumerate(line.split()) if i not in (4, 8)] for line in text.splitlines()[2:]]

    _, a, _ = cli(capsys, "bench", "--n-list", "2,3,4")
    _, b, _ = cli(capsys, "bench", "--n-list", "2,3,4", "--jobs", 2)
    assert rows(a) == rows(b)


def test_bench_files(capsys):
    code, text, _ = cli(capsys, "bench", "--cnf", GOLDEN / "fig1.cnf", GOLDEN / "bva_six.cnf")
    assert code == 0 and "fig1.cnf" in text and "bva_six.cnf" in text


def test_transform_command(capsys):
    code, text, _ = cli(capsys, "transform", GOLDEN / "delta_a_3.cnf")
    assert code == 0 and text.encode() == golden("bva_delta_a_3.cnf")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dnnf_forge.cli", "gen", "delta-b", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "p cnf 5 3" in proc.stdout
